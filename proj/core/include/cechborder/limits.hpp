#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cechborder/abelian.hpp"

namespace cechb {

// G_0 <- G_1 <- ... ; maps[i] : G_{i+1} -> G_i.
struct GroupTower {
    std::vector<FgAbGroup> stages;
    std::vector<GroupHom> maps;

    // Throws std::invalid_argument when a map does not match its stages.
    void validate() const;
    int last() const { return static_cast<int>(stages.size()) - 1; }
    // G_from -> G_to for from >= to.
    GroupHom composite(int from, int to) const;
};

// G_0 -> G_1 -> ... ; maps[i] : G_i -> G_{i+1}.
struct GroupChain {
    std::vector<FgAbGroup> stages;
    std::vector<GroupHom> maps;

    void validate() const;
    int last() const { return static_cast<int>(stages.size()) - 1; }
    // G_from -> G_to for from <= to.
    GroupHom composite(int from, int to) const;
};

enum class Verdict { stabilized, inconclusive };

struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LimitResult {
    Verdict verdict = Verdict::inconclusive;
    FgAbGroup group;
    int stable_stage = -1;
    int window = 0;
    int last_stage = -1;
    bool rational = false;  // group is the free group on a basis of the Q-limit
    // Inverse limits: the stable image inside G_stable_stage. Direct limits:
    // G_stable_stage itself.
    Subquotient stable;

    bool stabilized() const noexcept { return verdict == Verdict::stabilized; }
};

// Stabilized at i when i + window <= last, the images Im(G_j -> G_i) are
// constant for at least `window` values of j up to the last stage, and the
// stable images map isomorphically for `window` consecutive steps. The
// rational mode compares ranks instead.
LimitResult inverse_limit(const GroupTower& t, int window = 3, bool rational = false);
// Stabilized at i when i + window <= last and the maps out of stages
// i .. i + window - 1 are isomorphisms.
LimitResult direct_limit(const GroupChain& c, int window = 3, bool rational = false);

// Free part of a homomorphism, the map it induces on H (x) Q in free bases.
GroupHom rational_part(const GroupHom& h);

// hom : source system stage -> target system stage.
struct StageMap {
    int source_stage = 0;
    int target_stage = 0;
    GroupHom hom;
};

// Throws std::invalid_argument when consecutive squares fail to commute.
void check_commutes(const GroupTower& source, const GroupTower& target, const std::vector<StageMap>& maps);
void check_commutes(const GroupChain& source, const GroupChain& target, const std::vector<StageMap>& maps);

// The homomorphism between stabilized limit groups, from the first stage map
// landing at or past both stable stages. Throws InconclusiveError when either
// side is inconclusive or the transport leaves the certified range, and
// std::invalid_argument for rational limits.
GroupHom limit_map(const GroupTower& source, const LimitResult& source_limit, const GroupTower& target,
                   const LimitResult& target_limit, const std::vector<StageMap>& maps);
GroupHom limit_map(const GroupChain& source, const LimitResult& source_limit, const GroupChain& target,
                   const LimitResult& target_limit, const std::vector<StageMap>& maps);

// The stable image Im(G_last -> G_k) as a subquotient of G_k.
Subquotient stable_image(const GroupTower& t, int k);

}  // namespace cechb
