#ifndef FORGE_COLORING_HPP
#define FORGE_COLORING_HPP

#include <string>
#include <vector>

#include "forge/simplicial_complex.hpp"

namespace forge {

/// Partition of [m] into color classes. Each class lists its members in
/// within-class order; position_of(v) is the 0-based index of v there.
class Coloring {
public:
    Coloring() = default;

    explicit Coloring(std::vector<std::vector<Vertex>> classes) : classes_(std::move(classes)) {
        std::size_t m = 0;
        for (const auto& c : classes_) m += c.size();
        color_of_.assign(m, -1);
        position_of_.assign(m, -1);
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            if (classes_[c].empty()) throw InputError("empty color class");
            for (std::size_t p = 0; p < classes_[c].size(); ++p) {
                Vertex v = classes_[c][p];
                if (v < 0 || static_cast<std::size_t>(v) >= m)
                    throw InputError("color class member " + std::to_string(v) + " outside [m]");
                if (color_of_[static_cast<std::size_t>(v)] != -1)
                    throw InputError("vertex " + std::to_string(v) + " colored twice");
                color_of_[static_cast<std::size_t>(v)] = static_cast<int>(c);
                position_of_[static_cast<std::size_t>(v)] = static_cast<int>(p);
            }
        }
    }

    /// Color-major layout: class c holds consecutive ids in increasing order.
    static Coloring standard(const std::vector<int>& class_sizes) {
        std::vector<std::vector<Vertex>> classes;
        Vertex next = 0;
        for (int sz : class_sizes) {
            if (sz <= 0) throw InputError("color class sizes must be positive");
            std::vector<Vertex> cls;
            for (int i = 0; i < sz; ++i) cls.push_back(next++);
            classes.push_back(std::move(cls));
        }
        return Coloring(std::move(classes));
    }

    int ground_size() const { return static_cast<int>(color_of_.size()); }
    int num_colors() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<Vertex>>& classes() const { return classes_; }
    const std::vector<Vertex>& color_class(int c) const { return classes_[static_cast<std::size_t>(c)]; }
    int color_of(Vertex v) const { return color_of_[static_cast<std::size_t>(v)]; }
    int position_of(Vertex v) const { return position_of_[static_cast<std::size_t>(v)]; }

    /// |S ∩ C_i| ≤ 1 for every class.
    bool is_rainbow(const Simplex& s) const {
        std::vector<char> used(classes_.size(), 0);
        for (Vertex v : s) {
            auto& u = used[static_cast<std::size_t>(color_of(v))];
            if (u) return false;
            u = 1;
        }
        return true;
    }

private:
    std::vector<std::vector<Vertex>> classes_;
    std::vector<int> color_of_;
    std::vector<int> position_of_;
};

}  // namespace forge

#endif
