#include <csplab/error.hpp>
#include <csplab/generators.hpp>
#include <csplab/random.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace csplab {

namespace {

constexpr std::uint64_t kMaxCandidates = std::uint64_t{1} << 40;

std::uint64_t binomial(int n, int r)
{
    if (r < 0 || r > n) {
        return 0;
    }
    std::uint64_t out = 1;
    for (int i = 1; i <= r; ++i) {
        out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    }
    return out;
}

// First `count` entries of a uniform random permutation of [0, size).
std::vector<std::uint64_t> sample_without_replacement(SplitMix64& rng, std::uint64_t size, std::uint64_t count)
{
    std::unordered_map<std::uint64_t, std::uint64_t> swapped;
    auto at = [&](std::uint64_t i) {
        const auto it = swapped.find(i);
        return it == swapped.end() ? i : it->second;
    };
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto j = i + rng.uniform(size - i);
        const auto vi = at(i);
        const auto vj = at(j);
        swapped[j] = vi;
        out.push_back(vj);
    }
    return out;
}

// Combination of rank `rank` (lexicographic) among the r-subsets of [0, n).
std::vector<VarId> unrank_combination(int n, int r, std::uint64_t rank)
{
    std::vector<VarId> out;
    int next = 0;
    for (int slot = 0; slot < r; ++slot) {
        for (int v = next; v < n; ++v) {
            const auto with_v = binomial(n - v - 1, r - slot - 1);
            if (rank < with_v) {
                out.push_back(v);
                next = v + 1;
                break;
            }
            rank -= with_v;
        }
    }
    return out;
}

} // namespace

Problem gen_random(const RandomModelParams& params)
{
    const auto [n, d, r, m, t, seed] = params;
    if (n < 1 || d < 1 || r < 1 || r > n || m < 0) {
        throw ParameterError("random model needs n >= 1, d >= 1 and 1 <= r <= n");
    }
    if (static_cast<std::uint64_t>(m) > binomial(n, r)) {
        throw ParameterError("random model: m exceeds the number of distinct scopes C(n, r)");
    }
    std::uint64_t candidates = 1;
    for (int i = 0; i < r; ++i) {
        candidates *= static_cast<std::uint64_t>(d);
        if (candidates > kMaxCandidates) {
            throw ParameterError("random model: d^r is too large");
        }
    }
    if (t < 1 || t > candidates) {
        throw ParameterError("random model: t must lie in [1, d^r]");
    }

    SplitMix64 rng(seed);
    auto ranks = sample_without_replacement(rng, binomial(n, r), static_cast<std::uint64_t>(m));
    std::sort(ranks.begin(), ranks.end());

    std::vector<std::string> names;
    std::vector<std::vector<Value>> domains;
    for (int v = 0; v < n; ++v) {
        names.push_back("x" + std::to_string(v + 1));
        std::vector<Value> dom;
        for (int a = 0; a < d; ++a) {
            dom.emplace_back(std::int64_t{a});
        }
        domains.push_back(std::move(dom));
    }

    std::vector<Constraint> constraints;
    for (auto rank : ranks) {
        auto scope = unrank_combination(n, r, rank);
        const auto codes = sample_without_replacement(rng, candidates, t);
        std::vector<ValueIndex> flat;
        flat.reserve(static_cast<std::size_t>(t) * static_cast<std::size_t>(r));
        std::vector<ValueIndex> tup(static_cast<std::size_t>(r));
        for (auto code : codes) {
            for (int i = r - 1; i >= 0; --i) {
                tup[static_cast<std::size_t>(i)] = static_cast<ValueIndex>(code % static_cast<std::uint64_t>(d));
                code /= static_cast<std::uint64_t>(d);
            }
            flat.insert(flat.end(), tup.begin(), tup.end());
        }
        constraints.push_back(Constraint::extensional_flat(std::move(scope), std::move(flat)));
    }
    return Problem(std::move(names), std::move(domains), std::move(constraints));
}

PigeonholeInstance gen_pigeonhole(int n, int k, PigeonholeVariant variant)
{
    if (k < 1 || k >= n) {
        throw ParameterError("pigeon-hole composite needs 1 <= k < n");
    }
    std::vector<std::string> names;
    std::vector<std::vector<Value>> domains;
    auto add_group = [&](const char* prefix, int count, int holes) {
        for (int i = 1; i <= count; ++i) {
            names.push_back(prefix + std::to_string(i));
            std::vector<Value> dom;
            for (int a = 1; a <= holes; ++a) {
                dom.emplace_back(std::int64_t{a});
            }
            domains.push_back(std::move(dom));
        }
    };
    add_group("x", n + 1, n);
    add_group("y", k + 1, k);

    std::vector<Constraint> constraints;
    auto all_different = [&](int first, int count, int holes) {
        std::vector<std::vector<ValueIndex>> tuples;
        for (ValueIndex a = 0; a < holes; ++a) {
            for (ValueIndex b = 0; b < holes; ++b) {
                if (a != b) {
                    tuples.push_back({a, b});
                }
            }
        }
        for (int i = 0; i < count; ++i) {
            for (int j = i + 1; j < count; ++j) {
                constraints.push_back(Constraint::extensional({first + i, first + j}, tuples));
            }
        }
    };
    all_different(0, n + 1, n);
    all_different(n + 1, k + 1, k);

    auto x = [](int i) { return static_cast<VarId>(i - 1); };
    auto y = [n](int j) { return static_cast<VarId>(n + j); };
    std::vector<VarId> order;
    if (variant == PigeonholeVariant::A) {
        for (int i = 1; i <= n - k + 1; ++i) {
            order.push_back(x(i));
        }
        for (int j = 1; j <= k + 1; ++j) {
            order.push_back(y(j));
        }
        for (int i = n - k + 2; i <= n + 1; ++i) {
            order.push_back(x(i));
        }
    } else {
        for (int j = 1; j <= k; ++j) {
            order.push_back(y(j));
        }
        for (int i = 1; i <= n + 1; ++i) {
            order.push_back(x(i));
        }
        order.push_back(y(k + 1));
    }
    return {Problem(std::move(names), std::move(domains), std::move(constraints)), std::move(order)};
}

Grid parse_grid(std::string_view text)
{
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ParseError("grid is empty");
    }
    Grid g;
    g.rows = static_cast<int>(lines.size());
    g.cols = static_cast<int>(lines.front().size());
    bool any_open = false;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (static_cast<int>(lines[r].size()) != g.cols) {
            throw ParseError("grid row " + std::to_string(r + 1) + " has a different length");
        }
        for (char ch : lines[r]) {
            if (ch == '.') {
                g.blocked.push_back(0);
                any_open = true;
            } else if (ch == '#') {
                g.blocked.push_back(1);
            } else {
                throw ParseError(std::string("grid cell '") + ch + "' is neither '.' nor '#'");
            }
        }
    }
    if (!any_open || g.cols == 0) {
        throw ParseError("grid has no open cell");
    }
    return g;
}

std::vector<Slot> find_slots(const Grid& grid)
{
    std::vector<Slot> slots;
    auto scan = [&](Orientation o, int outer_count, int inner_count, auto cell) {
        for (int i = 0; i < outer_count; ++i) {
            int j = 0;
            while (j < inner_count) {
                const auto [r0, c0] = cell(i, j);
                if (!grid.open(r0, c0)) {
                    ++j;
                    continue;
                }
                Slot s;
                s.orientation = o;
                s.row = r0;
                s.col = c0;
                while (j < inner_count) {
                    const auto [r, c] = cell(i, j);
                    if (!grid.open(r, c)) {
                        break;
                    }
                    s.cells.emplace_back(r, c);
                    ++j;
                }
                s.length = static_cast<int>(s.cells.size());
                if (s.length >= 2) {
                    slots.push_back(std::move(s));
                }
            }
        }
    };
    scan(Orientation::Across, grid.rows, grid.cols, [](int i, int j) { return std::pair{i, j}; });
    scan(Orientation::Down, grid.cols, grid.rows, [](int i, int j) { return std::pair{j, i}; });
    return slots;
}

Dictionary normalize_dictionary(const std::vector<std::string>& raw)
{
    Dictionary out;
    std::unordered_set<std::string> seen;
    for (const auto& word : raw) {
        const bool ok =
            !word.empty() && std::all_of(word.begin(), word.end(), [](char ch) { return ch >= 'a' && ch <= 'z'; });
        if (!ok) {
            ++out.dropped;
            continue;
        }
        if (!seen.insert(word).second) {
            ++out.duplicates;
            continue;
        }
        out.words.push_back(word);
    }
    return out;
}

Dictionary parse_dictionary(std::string_view text)
{
    std::vector<std::string> raw;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            raw.push_back(line);
        }
    }
    return normalize_dictionary(raw);
}

std::string slot_name(const Slot& slot)
{
    return std::string(slot.orientation == Orientation::Across ? "A" : "D") + std::to_string(slot.row) + "_" +
           std::to_string(slot.col);
}

Problem build_crossword(const Grid& grid, const std::vector<std::string>& dictionary)
{
    const auto slots = find_slots(grid);
    std::map<int, std::vector<Value>> by_length;
    std::unordered_set<std::string> seen;
    for (const auto& w : dictionary) {
        if (seen.insert(w).second) {
            by_length[static_cast<int>(w.size())].emplace_back(w);
        }
    }

    std::vector<std::string> names;
    std::vector<std::vector<Value>> domains;
    // Slot index and offset covering each cell, per orientation.
    std::vector<std::pair<int, int>> across(static_cast<std::size_t>(grid.rows * grid.cols), {-1, -1});
    std::vector<std::pair<int, int>> down = across;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        names.push_back(slot_name(slots[s]));
        const auto it = by_length.find(slots[s].length);
        domains.push_back(it == by_length.end() ? std::vector<Value>{} : it->second);
        auto& cover = slots[s].orientation == Orientation::Across ? across : down;
        for (std::size_t i = 0; i < slots[s].cells.size(); ++i) {
            const auto [r, c] = slots[s].cells[i];
            cover[static_cast<std::size_t>(r * grid.cols + c)] = {static_cast<int>(s), static_cast<int>(i)};
        }
    }

    std::vector<Constraint> constraints;
    for (std::size_t cell = 0; cell < across.size(); ++cell) {
        const auto [a, pa] = across[cell];
        const auto [d, pd] = down[cell];
        if (a >= 0 && d >= 0) {
            constraints.push_back(Constraint::letter_equality(a, d, pa, pd));
        }
    }
    for (std::size_t i = 0; i < slots.size(); ++i) {
        for (std::size_t j = i + 1; j < slots.size(); ++j) {
            if (slots[i].length == slots[j].length) {
                constraints.push_back(Constraint::not_equal(static_cast<VarId>(i), static_cast<VarId>(j)));
            }
        }
    }
    return Problem(std::move(names), std::move(domains), std::move(constraints));
}

} // namespace csplab
