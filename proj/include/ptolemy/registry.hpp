#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptolemy {

using VarId = std::uint32_t;

enum class VarRole { PtolemyCoord, Eigenvalue, Witness, Generic };

/// Named variable namespace shared by all polynomials of one computation.
/// Each registry instance has a unique id; mixing polynomials from different
/// registries is a hard error.
class VariableRegistry {
public:
    VariableRegistry() : id_(next_id()++) {}

    VarId add(const std::string& name, VarRole role = VarRole::Generic) {
        if (index_.count(name))
            throw std::invalid_argument("registry: duplicate variable '" + name + "'");
        VarId id = static_cast<VarId>(names_.size());
        names_.push_back(name);
        roles_.push_back(role);
        index_.emplace(name, id);
        return id;
    }

    VarId id(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::out_of_range("registry: unknown variable '" + name + "'");
        return it->second;
    }

    bool has(const std::string& name) const { return index_.count(name) != 0; }

    const std::string& name(VarId id) const { return names_.at(id); }
    VarRole role(VarId id) const { return roles_.at(id); }
    std::size_t size() const { return names_.size(); }
    std::uint64_t registry_id() const { return id_; }

    std::vector<VarId> vars_with_role(VarRole r) const {
        std::vector<VarId> out;
        for (VarId i = 0; i < names_.size(); ++i)
            if (roles_[i] == r) out.push_back(i);
        return out;
    }

private:
    static std::uint64_t& next_id() {
        static std::uint64_t n = 1;
        return n;
    }

    std::uint64_t id_;
    std::vector<std::string> names_;
    std::vector<VarRole> roles_;
    std::unordered_map<std::string, VarId> index_;
};

using RegistryPtr = std::shared_ptr<VariableRegistry>;

inline void require_same_registry(const RegistryPtr& a, const RegistryPtr& b) {
    if (!a || !b || a->registry_id() != b->registry_id())
        throw std::invalid_argument("operation mixes polynomials from different variable registries");
}

}  // namespace ptolemy
