#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rotorkit/errors.hpp"

namespace rotorkit {

enum class UniverseKind { vertex, arc, face, block };

inline const char* to_string(UniverseKind k) {
    switch (k) {
    case UniverseKind::vertex: return "vertex";
    case UniverseKind::arc: return "arc";
    case UniverseKind::face: return "face";
    case UniverseKind::block: return "block";
    }
    return "?";
}

/// A finite ordered index set (the vertices, arcs or faces of one graph).
/// Formal sums carry a shared handle to their universe; two sums are
/// compatible iff they point at the very same universe object. Copying a
/// graph copies the handle, so copies stay compatible with the original.
class Universe {
public:
    Universe(UniverseKind kind, std::vector<std::string> names)
        : kind_(kind), names_(std::move(names)) {
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            auto [it, inserted] = index_.emplace(names_[i], i);
            if (!inserted)
                throw parse_error("duplicate " + std::string(to_string(kind)) +
                                  " identifier '" + names_[i] + "'");
        }
    }

    UniverseKind kind() const { return kind_; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            throw unknown_id_error("unknown " + std::string(to_string(kind_)) +
                                   " '" + id + "'");
        return it->second;
    }

private:
    UniverseKind kind_;
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using UniverseHandle = std::shared_ptr<const Universe>;

inline UniverseHandle make_universe(UniverseKind kind,
                                    std::vector<std::string> names) {
    return std::make_shared<const Universe>(kind, std::move(names));
}

} // namespace rotorkit
