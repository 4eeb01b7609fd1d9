#pragma once

#include <csplab/problem.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace csplab {

/// Random model (n, d, r, m, t): n variables with domain {0..d-1}, m
/// distinct scopes of arity r, each relation holding exactly t allowed
/// tuples. All draws are uniform without replacement from SplitMix64(seed).
struct RandomModelParams {
    int n = 0;
    int d = 0;
    int r = 2;
    int m = 0;
    std::uint64_t t = 0;
    std::uint64_t seed = 0;
};

/// Throws ParameterError when m exceeds C(n, r) or t is outside [1, d^r].
Problem gen_random(const RandomModelParams& params);

enum class PigeonholeVariant {
    A, ///< x1..x(n-k+1), y1..y(k+1), x(n-k+2)..x(n+1)
    B, ///< y1..yk, x1..x(n+1), y(k+1)
};

struct PigeonholeInstance {
    Problem problem;
    std::vector<VarId> order;
};

/// Two independent pigeon-hole problems: x1..x(n+1) over {1..n} and
/// y1..y(k+1) over {1..k}, pairwise different inside each group (extensional
/// relations). The variant only changes the returned static order. Requires
/// 1 <= k < n (ParameterError).
PigeonholeInstance gen_pigeonhole(int n, int k, PigeonholeVariant variant);

struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<char> blocked; ///< row-major

    [[nodiscard]] bool open(int r, int c) const
    {
        return blocked[static_cast<std::size_t>(r * cols + c)] == 0;
    }
};

enum class Orientation {
    Across,
    Down,
};

struct Slot {
    Orientation orientation = Orientation::Across;
    int row = 0;
    int col = 0;
    int length = 0;
    std::vector<std::pair<int, int>> cells;
};

/// One row per line, '.' open and '#' blocked. Rows must have equal length
/// and at least one cell must be open (ParseError otherwise).
Grid parse_grid(std::string_view text);

/// Maximal runs of at least two open cells: across slots row-major, then
/// down slots column-major.
std::vector<Slot> find_slots(const Grid& grid);

struct Dictionary {
    std::vector<std::string> words;
    std::size_t dropped = 0;    ///< words with characters other than a-z
    std::size_t duplicates = 0; ///< repeated words (first occurrence kept)
};

/// Keeps words made of ASCII lowercase letters only.
Dictionary normalize_dictionary(const std::vector<std::string>& raw);
/// One word per line (LF or CRLF); blank lines ignored.
Dictionary parse_dictionary(std::string_view text);

/// One variable per slot (domain: dictionary words of the slot's length, in
/// dictionary order), one LetterEquality per crossing cell (row-major) and
/// one NotEqual per pair of equal-length slots.
Problem build_crossword(const Grid& grid, const std::vector<std::string>& dictionary);

/// Slot variable name, e.g. "A0_2" for the across slot starting at row 0,
/// column 2.
std::string slot_name(const Slot& slot);

} // namespace csplab
