#pragma once

#include <cmath>

namespace wsnsim {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Plain planar Euclidean distance.
inline double euclidean_distance(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace wsnsim
