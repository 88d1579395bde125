#ifndef YDOUBLE_WORDS_HPP
#define YDOUBLE_WORDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ydouble/nprod.hpp"

namespace ydouble {

// One operator word: rational prefactor times an ordered product of catalog
// operators at spectral variables, with an optional set of variables to be
// extracted at their [x^{-1}] mode (commutator-defined components) and an
// optional explicit delta prefactor (right-hand sides of delta relations).
struct Word {
    FactorProduct prefactor{Rat(1)};
    std::vector<std::pair<int, GVO>> factors;
    std::vector<int> extract;
    std::optional<DeltaAtom> delta;
};

// Word brought to the canonical region (ascending variable ids, outermost
// first). Deltas in identity variables stay attached; extraction variables
// consumed by a delta have already been substituted away; surviving
// extraction variables are relabeled canonically.
struct NormalTerm {
    FactorProduct scalar;
    Skeleton skel;
    std::vector<DeltaAtom> deltas;
    std::vector<int> region;
    std::vector<int> extract;

    std::string group_key() const;
};

// Contract the word to scalar x shell and region-normalize, emitting the
// delta children produced by every crossed simple pole. Throws NonsimplePole
// when a double pole would have to cross regions.
std::vector<NormalTerm> normalize_word(const Word& w);

// Sum of rational functions split by their half-integer atom content.
class ScalarSum {
  public:
    void add(const FactorProduct& f, const Rat& coeff);
    bool is_zero() const;
    std::string str() const;

  private:
    struct Part {
        MPoly num, den{1};
    };
    std::map<std::string, Part> parts_;
    std::map<std::string, std::map<LinAtom, int>> cores_;
};

// Exact identity check: sum of lhs words equals sum of rhs words as
// normal-ordered operator distributions. Grouping is by (deltas, shell,
// surviving extractions); each group's scalar sum must vanish identically.
struct WordCheck {
    enum class Status { pass, fail, sign_discrepancy, nonsimple_pole };
    Status status = Status::pass;
    std::string witness;
};
WordCheck check_word_identity(const std::vector<Word>& lhs, const std::vector<Word>& rhs);

// Exact matrix element <target| sum of words |src> for bosonless source and
// target states, as a scalar sum in the surviving spectral variables.
// Extraction variables are removed by exact residue calculus.
ScalarSum words_vacuum_element(const std::vector<Word>& words, const FockState& src,
                               const FockState& target);
bool scalar_sum_equals_rat(const ScalarSum& s, const Rat& value);

}  // namespace ydouble

#endif
