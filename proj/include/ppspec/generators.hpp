#ifndef PPSPEC_GENERATORS_HPP
#define PPSPEC_GENERATORS_HPP

#include "ppspec/point_source.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ppspec {

/// Lattice sum_i n_i * basis_i + origin; the point with integer coordinates
/// n gets color (n_1 + ... + n_d) mod colors.
SourcePtr lattice_source(std::vector<std::vector<double>> basis, int colors = 1,
                         std::vector<double> origin = {});

/// One-dimensional model set {offset + q : q in Z[tau], q' in W} with
/// q' the Galois conjugate and W an interval of internal space.
struct CutProjectSpec {
    Coord window_lo{QuadInt{-1, 0}};
    Coord window_hi{QuadInt{-1, 1}};
    bool lo_closed = true;
    bool hi_closed = false;
    QuadInt offset{};

    /// [-1, tau - 1): the model set equal to the bi-infinite Fibonacci chain
    /// with tile lengths tau and 1 and seed b|a.
    static CutProjectSpec fibonacci();
};

SourcePtr cut_project_source(const CutProjectSpec& spec);

/// Constant-length-free substitution on letters 0..n-1 with tile lengths
/// forming a left Perron eigenvector: lengths[l] * inflation equals the sum
/// of lengths over the expansion of l.
struct SubstitutionRule {
    std::string name = "substitution";
    std::vector<std::vector<int>> expansion;
    std::vector<Coord> lengths;
    Coord inflation;
    std::vector<int> color;
    int colors = 1;

    std::size_t letters() const { return expansion.size(); }

    static SubstitutionRule fibonacci();
    static SubstitutionRule thue_morse();
    static SubstitutionRule period_doubling();
};

/// Substitution matrix M[i][j] = number of letter i in the expansion of j.
std::vector<std::vector<std::int64_t>> substitution_matrix(const SubstitutionRule& rule);
bool is_primitive(const SubstitutionRule& rule);
/// Expands a word `times` times.
std::vector<int> expand_word(const SubstitutionRule& rule, std::vector<int> word, int times);

/// Fixed-point tiling seeded at the origin: tile of letter `right_seed`
/// starts at 0; with `left_seed`, tiles also extend to the left and the
/// seed pair left|right must be a legal word. Points are the left tile
/// endpoints colored by letter.
SourcePtr substitution_source(const SubstitutionRule& rule, int right_seed,
                              std::optional<int> left_seed = std::nullopt);

/// Bi-infinite Fibonacci chain, tile lengths (tau, 1), exact coordinates.
SourcePtr fibonacci_source();
/// Bi-infinite Thue-Morse chain with unit tiles, colored a -> 0, b -> 1.
SourcePtr thue_morse_source();

/// Homogeneous Poisson process generated independently per unit cell from
/// (seed, cell index), so nested windows agree.
SourcePtr poisson_source(double intensity, std::uint64_t seed, int dim = 1);

/// Builds a source from its JSON description
/// {"type": "fibonacci"|"lattice"|"substitution"|"cut_project"|"poisson"|
///  "thue_morse"|"period_doubling", ...}. Throws std::invalid_argument on a
/// malformed spec.
SourcePtr source_from_json(const nlohmann::json& spec);

} // namespace ppspec

#endif
