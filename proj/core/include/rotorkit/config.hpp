#pragma once

#include <map>
#include <string>

#include "rotorkit/ints.hpp"
#include "rotorkit/universe.hpp"

namespace rotorkit {

class ComponentPartition;
class Config;

/// c1 + k*c2. The universes must be the same object.
Config combine(const Config& c1, const Int& k, const Config& c2);

/// Integer formal sum over a finite index set: the groups of particle
/// configurations (over vertices), arc configurations and face routing
/// vectors. Zero coefficients are never stored, so equality of the sparse
/// maps is equality of the sums. Values are immutable; operations return
/// new values.
class Config {
public:
    explicit Config(UniverseHandle universe) : universe_(std::move(universe)) {}

    Config(UniverseHandle universe, std::map<int, Int> coefficients);

    static Config zero(UniverseHandle universe) { return Config(std::move(universe)); }

    /// k * <single index>.
    static Config unit(UniverseHandle universe, int index, Int k = 1);
    static Config unit(UniverseHandle universe, const std::string& id, Int k = 1);

    const UniverseHandle& universe() const { return universe_; }

    /// Sparse canonical form, ordered by index.
    const std::map<int, Int>& coefficients() const { return coef_; }

    Int coeff(int index) const;
    Int coeff(const std::string& id) const { return coeff(universe_->index_of(id)); }

    bool is_zero() const { return coef_.empty(); }

    /// Number of indices with nonzero coefficient.
    int support_size() const { return static_cast<int>(coef_.size()); }

    /// Sum of all coefficients.
    Int total() const;

    /// Multiset-element test of the paper: index present with coefficient >= 1.
    bool is_element(int index) const { return coeff(index) >= 1; }

    bool operator==(const Config& other) const;
    bool operator!=(const Config& other) const { return !(*this == other); }

    Config operator+(const Config& other) const { return combine(*this, 1, other); }
    Config operator-(const Config& other) const { return combine(*this, -1, other); }
    Config operator*(const Int& k) const;
    Config operator-() const { return *this * Int(-1); }

    /// Canonical text form: comma-separated `index=int` pairs in index order;
    /// the zero sum prints as the empty string.
    std::string to_string() const;

    /// Parses the literal syntax accepted by the CLI. Omitted indices are 0;
    /// a duplicated index is a parse error.
    static Config parse(UniverseHandle universe, const std::string& text);

private:
    UniverseHandle universe_;
    std::map<int, Int> coef_;
};

bool is_nonnegative(const Config& c);

/// c1 <= c2, i.e. c2 - c1 >= 0.
bool leq(const Config& c1, const Config& c2);

/// Per-block coefficient sums: the total number of particles in each block
/// of the partition. The partition must cover the config's universe.
Config degree(const Config& c, const ComponentPartition& partition);

} // namespace rotorkit
