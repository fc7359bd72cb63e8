#include "rotorkit/config.hpp"

#include <sstream>

#include "rotorkit/errors.hpp"
#include "rotorkit/multigraph.hpp"

namespace rotorkit {

namespace {

void require_same_universe(const Config& a, const Config& b) {
    if (a.universe() != b.universe())
        throw universe_mismatch_error(
            "formal sums over different universes (" +
            std::string(to_string(a.universe()->kind())) + " vs " +
            std::string(to_string(b.universe()->kind())) + ")");
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config::Config(UniverseHandle universe, std::map<int, Int> coefficients)
    : universe_(std::move(universe)) {
    for (auto& [i, c] : coefficients) {
        if (i < 0 || i >= universe_->size())
            throw unknown_id_error("coefficient index " + std::to_string(i) +
                                   " outside universe");
        if (c != 0) coef_.emplace(i, std::move(c));
    }
}

Config Config::unit(UniverseHandle universe, int index, Int k) {
    Config c(std::move(universe));
    if (index < 0 || index >= c.universe_->size())
        throw unknown_id_error("index " + std::to_string(index) + " outside universe");
    if (k != 0) c.coef_.emplace(index, std::move(k));
    return c;
}

Config Config::unit(UniverseHandle universe, const std::string& id, Int k) {
    int index = universe->index_of(id);
    return unit(std::move(universe), index, std::move(k));
}

Int Config::coeff(int index) const {
    auto it = coef_.find(index);
    return it == coef_.end() ? Int(0) : it->second;
}

Int Config::total() const {
    Int t = 0;
    for (const auto& [i, c] : coef_) t += c;
    return t;
}

bool Config::operator==(const Config& other) const {
    require_same_universe(*this, other);
    return coef_ == other.coef_;
}

Config Config::operator*(const Int& k) const {
    Config out(universe_);
    if (k == 0) return out;
    for (const auto& [i, c] : coef_) out.coef_.emplace(i, c * k);
    return out;
}

std::string Config::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : coef_) {
        if (!first) os << ',';
        first = false;
        os << universe_->name(i) << '=' << c;
    }
    return os.str();
}

Config Config::parse(UniverseHandle universe, const std::string& text) {
    Config out(universe);
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected index=int, got '" + item + "'");
        std::string id = trim(item.substr(0, eq));
        std::string value = trim(item.substr(eq + 1));
        int index = universe->index_of(id);
        if (out.coef_.count(index))
            throw parse_error("duplicate index '" + id + "' in config literal");
        Int k;
        try {
            k = Int(value);
        } catch (const std::exception&) {
            throw parse_error("bad integer '" + value + "' for index '" + id + "'");
        }
        if (k != 0) out.coef_.emplace(index, k);
    }
    return out;
}

Config combine(const Config& c1, const Int& k, const Config& c2) {
    require_same_universe(c1, c2);
    std::map<int, Int> coef = c1.coefficients();
    if (k != 0) {
        for (const auto& [i, c] : c2.coefficients()) {
            auto [it, inserted] = coef.emplace(i, c * k);
            if (!inserted) {
                it->second += c * k;
                if (it->second == 0) coef.erase(it);
            } else if (it->second == 0) {
                coef.erase(it);
            }
        }
    }
    return Config(c1.universe(), std::move(coef));
}

bool is_nonnegative(const Config& c) {
    for (const auto& [i, v] : c.coefficients())
        if (v < 0) return false;
    return true;
}

bool leq(const Config& c1, const Config& c2) {
    return is_nonnegative(combine(c2, -1, c1));
}

Config degree(const Config& c, const ComponentPartition& partition) {
    if (c.universe() != partition.ground())
        throw universe_mismatch_error("config universe does not match partition ground set");
    std::map<int, Int> sums;
    for (const auto& [i, v] : c.coefficients()) sums[partition.block_of(i)] += v;
    return Config(partition.block_universe(), std::move(sums));
}

} // namespace rotorkit
