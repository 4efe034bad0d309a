#include "qforge/quandle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qforge/errors.hpp"

namespace qforge {

// ---------------------------------------------------------------------------
// Finite racks

AxiomReport check_axioms(const std::vector<std::vector<int>>& op)
{
    AxiomReport r;
    const int n = static_cast<int>(op.size());
    if (n == 0) {
        r.message = "empty table";
        return r;
    }
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(op[i].size()) != n) {
            r.message = "row " + std::to_string(i) + " has " + std::to_string(op[i].size()) + " entries";
            return r;
        }
        for (int j = 0; j < n; ++j)
            if (op[i][j] < 0 || op[i][j] >= n) {
                r.message = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range";
                return r;
            }
    }
    r.well_formed = true;

    r.right_invertible = true;
    for (int j = 0; j < n && r.right_invertible; ++j) {
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            if (seen[op[i][j]]) {
                r.right_invertible = false;
                r.column_witness = std::make_pair(j, op[i][j]);
                break;
            }
            seen[op[i][j]] = 1;
        }
    }

    r.self_distributive = true;
    for (int x = 0; x < n && r.self_distributive; ++x)
        for (int y = 0; y < n && r.self_distributive; ++y)
            for (int z = 0; z < n; ++z)
                if (op[op[x][y]][z] != op[op[x][z]][op[y][z]]) {
                    r.self_distributive = false;
                    r.distributivity_witness = std::array<int, 3>{x, y, z};
                    break;
                }

    r.idempotent = true;
    for (int x = 0; x < n; ++x)
        if (op[x][x] != x) {
            r.idempotent = false;
            r.idempotence_witness = x;
            break;
        }

    if (!r.right_invertible)
        r.message = "column " + std::to_string(r.column_witness->first) + " is not a permutation";
    else if (!r.self_distributive)
        r.message = "self-distributivity fails at (" + std::to_string((*r.distributivity_witness)[0]) + "," +
                    std::to_string((*r.distributivity_witness)[1]) + "," +
                    std::to_string((*r.distributivity_witness)[2]) + ")";
    else if (!r.idempotent)
        r.message = "rack but not a quandle: " + std::to_string(*r.idempotence_witness) + " * itself differs";
    else
        r.message = "quandle";
    return r;
}

TableRack::TableRack(std::vector<std::vector<int>> op)
{
    const auto report = check_axioms(op);
    if (!report.is_rack()) throw InputError("table is not a rack: " + report.message);
    size_ = static_cast<int>(op.size());
    op_.resize(static_cast<std::size_t>(size_) * size_);
    inv_.resize(op_.size());
    for (int x = 0; x < size_; ++x)
        for (int y = 0; y < size_; ++y) {
            op_[index(x, y)] = op[x][y];
            inv_[index(op[x][y], y)] = x;
        }
    is_quandle_ = report.idempotent;
}

std::size_t TableRack::index(int x, int y) const
{
    if (x < 0 || x >= size_ || y < 0 || y >= size_)
        throw InputError("element outside rack of size " + std::to_string(size_));
    return static_cast<std::size_t>(x) * size_ + y;
}

std::vector<std::vector<int>> TableRack::table() const
{
    std::vector<std::vector<int>> t(size_, std::vector<int>(size_));
    for (int x = 0; x < size_; ++x)
        for (int y = 0; y < size_; ++y) t[x][y] = op(x, y);
    return t;
}

Permutation TableRack::column(int y) const
{
    Permutation p(size_);
    for (int x = 0; x < size_; ++x) p[x] = op(x, y);
    return p;
}

namespace {

int mod(long a, long n)
{
    long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

std::vector<std::vector<int>> make_table(int n, const std::function<int(int, int)>& f)
{
    if (n < 1) throw InputError("rack size must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = f(i, j);
    return t;
}

Permutation compose(const Permutation& p, const Permutation& q)  // p o q
{
    Permutation r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Permutation inverse(const Permutation& p)
{
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

Permutation identity(std::size_t n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

void check_permutation(const Permutation& p, std::size_t degree)
{
    if (p.size() != degree) throw InputError("permutation has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= degree || seen[v]) throw InputError("not a permutation");
        seen[v] = 1;
    }
}

// Closure of the group generated by `generators` (all of one degree).
std::vector<Permutation> group_elements(const std::vector<Permutation>& generators, std::size_t degree)
{
    for (const auto& g : generators) check_permutation(g, degree);
    std::vector<Permutation> elems{identity(degree)};
    std::set<Permutation> seen{elems.front()};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : generators) {
            auto p = compose(elems[i], g);
            if (seen.insert(p).second) elems.push_back(std::move(p));
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

}  // namespace

TableRack dihedral_quandle(int n)
{
    return TableRack(make_table(n, [n](int i, int j) { return mod(2L * j - i, n); }));
}

TableRack trivial_quandle(int n)
{
    return TableRack(make_table(n, [](int i, int) { return i; }));
}

TableRack alexander_quandle(int n, int t)
{
    if (std::gcd(mod(t, n), n) != 1 && n > 1) throw InputError("alexander_quandle: t must be a unit mod n");
    return TableRack(make_table(n, [n, t](int i, int j) { return mod(static_cast<long>(t) * i + (1L - t) * j, n); }));
}

TableRack cyclic_permutation_rack(int n)
{
    return TableRack(make_table(n, [n](int i, int) { return (i + 1) % n; }));
}

TableRack conjugation_quandle(const std::vector<Permutation>& generators)
{
    if (generators.empty()) throw InputError("conjugation_quandle: need at least one generator");
    const auto elems = group_elements(generators, generators.front().size());
    std::map<Permutation, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    const int n = static_cast<int>(elems.size());
    return TableRack(make_table(n, [&](int x, int y) {
        return index.at(compose(compose(inverse(elems[y]), elems[x]), elems[y]));
    }));
}

std::vector<Permutation> symmetric_group_generators(int n)
{
    if (n < 1) throw InputError("symmetric group degree must be positive");
    if (n == 1) return {identity(1)};
    Permutation swap = identity(n);
    std::swap(swap[0], swap[1]);
    Permutation cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return {swap, cycle};
}

TableRack finite_coset_quandle(const std::vector<Permutation>& group_generators,
                               const std::vector<FiniteCosetPart>& parts)
{
    if (group_generators.empty() || parts.empty()) throw InputError("finite_coset_quandle: empty input");
    const std::size_t degree = group_generators.front().size();
    const auto elems = group_elements(group_generators, degree);
    std::map<Permutation, int> elem_index;
    for (std::size_t i = 0; i < elems.size(); ++i) elem_index[elems[i]] = static_cast<int>(i);

    // coset_of[part][element] = global index of the coset H_part * element
    std::vector<std::vector<int>> coset_of(parts.size(), std::vector<int>(elems.size(), -1));
    std::vector<std::pair<std::size_t, Permutation>> cosets;  // (part, representative)
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto& part = parts[p];
        if (!elem_index.count(part.z)) throw InputError("finite_coset_quandle: z is not in the group");
        for (const auto& h : part.subgroup_generators) {
            if (!elem_index.count(h)) throw InputError("finite_coset_quandle: subgroup generator not in the group");
            if (compose(h, part.z) != compose(part.z, h))
                throw InputError("finite_coset_quandle: H_i is not contained in C_G(z_i)");
        }
        const auto subgroup = part.subgroup_generators.empty() ? std::vector<Permutation>{identity(degree)}
                                                               : group_elements(part.subgroup_generators, degree);
        for (std::size_t e = 0; e < elems.size(); ++e) {
            if (coset_of[p][e] >= 0) continue;
            const int id = static_cast<int>(cosets.size());
            cosets.emplace_back(p, elems[e]);
            for (const auto& h : subgroup) coset_of[p][elem_index.at(compose(h, elems[e]))] = id;
        }
    }
    const int n = static_cast<int>(cosets.size());
    return TableRack(make_table(n, [&](int a, int b) {
        const auto& [i, x] = cosets[a];
        const auto& [j, y] = cosets[b];
        const auto yi = inverse(y);
        auto w = compose(compose(compose(compose(inverse(parts[i].z), x), yi), parts[j].z), y);
        return coset_of[i][elem_index.at(w)];
    }));
}

std::vector<std::vector<int>> components(const TableRack& rack)
{
    const int n = rack.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = find(x), b = find(rack.op(x, y));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int x = 0; x < n; ++x) groups[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

namespace {

// Deterministic Schreier-Sims with explicit transversals.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  void add_generator(const Permutation& g)
  {
      auto [residue, level] = sift(g, 0);
      if (residue == identity(degree_)) return;
      add_to_levels(0, level, residue);
      complete();
  }

  Integer order() const
  {
      Integer o = 1;
      for (const auto& level : levels_) {
          std::size_t orbit = 0;
          for (const auto& t : level.transversal)
              if (t) ++orbit;
          o *= static_cast<unsigned long>(orbit);
      }
      return o;
  }

 private:
  struct Level {
    int base = 0;
    std::vector<Permutation> generators;
    std::vector<std::optional<Permutation>> transversal;  // transversal[p](base) == p
  };

  // Applies permutations left to right: (a then b)(i) = b[a[i]].
  static Permutation then(const Permutation& a, const Permutation& b) { return compose(b, a); }

  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start) const
  {
      for (std::size_t i = start; i < levels_.size(); ++i) {
          const auto& level = levels_[i];
          const int p = g[level.base];
          if (!level.transversal[p]) return {g, i};
          g = then(g, inverse(*level.transversal[p]));
      }
      return {g, levels_.size()};
  }

  // g fixes the bases of levels < to, so it lies in every group from..to.
  void add_to_levels(std::size_t from, std::size_t to, const Permutation& g)
  {
      if (to == levels_.size()) {
          Level level;
          for (std::size_t p = 0; p < degree_; ++p)
              if (g[p] != static_cast<int>(p)) {
                  level.base = static_cast<int>(p);
                  break;
              }
          levels_.push_back(std::move(level));
      }
      for (std::size_t l = from; l <= to; ++l) levels_[l].generators.push_back(g);
  }

  void rebuild_orbit(Level& level) const
  {
      level.transversal.assign(degree_, std::nullopt);
      level.transversal[level.base] = identity(degree_);
      std::vector<int> queue{level.base};
      for (std::size_t head = 0; head < queue.size(); ++head) {
          const int p = queue[head];
          for (const auto& s : level.generators) {
              const int q = s[p];
              if (!level.transversal[q]) {
                  level.transversal[q] = then(*level.transversal[p], s);
                  queue.push_back(q);
              }
          }
      }
  }

  // Repeats until every Schreier generator of every level sifts to the identity.
  void complete()
  {
      bool changed = true;
      while (changed) {
          changed = false;
          for (std::size_t l = levels_.size(); l-- > 0 && !changed;) {
              rebuild_orbit(levels_[l]);
              const Level level = levels_[l];
              for (std::size_t p = 0; p < degree_ && !changed; ++p) {
                  if (!level.transversal[p]) continue;
                  for (const auto& s : level.generators) {
                      const Permutation schreier =
                          then(then(*level.transversal[p], s), inverse(*level.transversal[s[p]]));
                      auto [residue, deeper] = sift(schreier, l + 1);
                      if (residue != identity(degree_)) {
                          add_to_levels(l + 1, deeper, residue);
                          changed = true;
                          break;
                      }
                  }
              }
          }
      }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
};

}  // namespace

Integer permutation_group_order(const std::vector<Permutation>& generators, int degree)
{
    StabilizerChain chain(static_cast<std::size_t>(degree));
    for (const auto& g : generators) {
        check_permutation(g, static_cast<std::size_t>(degree));
        chain.add_generator(g);
    }
    return chain.order();
}

Integer inner_group_order(const TableRack& rack)
{
    std::vector<Permutation> gens;
    for (int y = 0; y < rack.size(); ++y) gens.push_back(rack.column(y));
    return permutation_group_order(gens, rack.size());
}

// ---------------------------------------------------------------------------
// Smith normal form

std::string AbelianInvariants::to_string() const
{
    std::ostringstream out;
    bool first = true;
    if (free_rank > 0) {
        out << "Z";
        if (free_rank > 1) out << "^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        if (!first) out << " + ";
        out << "Z/" << t.get_str();
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

AbelianInvariants abelian_invariants(const std::vector<std::vector<Integer>>& relations, std::size_t columns)
{
    std::vector<std::vector<Integer>> a = relations;
    for (const auto& row : a)
        if (row.size() != columns) throw InputError("relation matrix row has wrong width");
    const std::size_t rows = a.size();
    std::vector<Integer> diagonal;

    std::size_t t = 0;
    while (t < rows && t < columns) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        std::size_t pr = rows, pc = columns;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < columns; ++j)
                if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < columns; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < columns; ++j) {
                if (a[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // Divisibility: fold any offending row into row t and retry.
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < columns; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t c = t; c < columns; ++c) a[t][c] += a[i][c];
                            clean = false;
                            break;
                        }
            }
        }
        diagonal.push_back(abs(a[t][t]));
        ++t;
    }

    AbelianInvariants inv;
    inv.free_rank = static_cast<int>(columns - diagonal.size());
    std::sort(diagonal.begin(), diagonal.end());
    for (const auto& d : diagonal)
        if (d > 1) inv.torsion.push_back(d);
    return inv;
}

GroupPresentation env_presentation(const TableRack& rack)
{
    const int n = rack.size();
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) names.push_back("e" + std::to_string(x));
    GroupPresentation pres{Alphabet::free_group(names), {}, {}};
    std::vector<std::vector<Integer>> matrix;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int xy = rack.op(x, y);
            pres.relators.push_back(GroupWord::from_syllables(
                {{static_cast<std::size_t>(xy), -1}, {static_cast<std::size_t>(y), -1},
                 {static_cast<std::size_t>(x), 1}, {static_cast<std::size_t>(y), 1}},
                pres.generators));
            std::vector<Integer> row(n, 0);
            row[x] += 1;
            row[xy] -= 1;
            matrix.push_back(std::move(row));
        }
    pres.abelianization = abelian_invariants(matrix, static_cast<std::size_t>(n));
    return pres;
}

// ---------------------------------------------------------------------------
// Finite metric

namespace {

std::vector<int> bfs_distances(const TableRack& rack, int source)
{
    std::vector<int> dist(rack.size(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int y = 0; y < rack.size(); ++y) {
            const int w = rack.op(v, y);
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

std::optional<int> metric_distance(const TableRack& rack, int x, int y)
{
    if (x < 0 || x >= rack.size() || y < 0 || y >= rack.size()) throw InputError("element outside rack");
    for (const auto& comp : components(rack)) {
        const bool hx = std::binary_search(comp.begin(), comp.end(), x);
        const bool hy = std::binary_search(comp.begin(), comp.end(), y);
        if (hx != hy) throw DomainError("metric_distance: elements lie in different components");
    }
    const int d = bfs_distances(rack, x)[y];
    if (d < 0) return std::nullopt;
    return d;
}

std::vector<int> component_diameter(const TableRack& rack)
{
    std::vector<int> out;
    for (const auto& comp : components(rack)) {
        int diam = 0;
        for (int x : comp) {
            const auto dist = bfs_distances(rack, x);
            for (int y : comp) diam = std::max(diam, dist[y]);
        }
        out.push_back(diam);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coset quandles

std::size_t CosetElementHash::operator()(const CosetElement& x) const noexcept
{
    return GroupWordHash{}(x.rep) * 31 + x.part;
}

std::string to_string(ChooserRule rule)
{
    return rule == ChooserRule::kShortest ? "shortest" : "shifted";
}

namespace {

GroupWord shortest_in_coset(const GroupWord& h, const GroupWord& g, const Alphabet& alphabet)
{
    if (h.is_identity()) return g;
    const auto& hs = h.syllables();
    // <a^e> is all of <a> when e is a unit: strip the leading a-syllable.
    if (hs.size() == 1) {
        const int k = alphabet.order(hs.front().gen);
        const std::int64_t e = hs.front().exponent;
        const bool full = k == kInfiniteOrder ? (e == 1 || e == -1) : std::gcd<std::int64_t, std::int64_t>(e, k) == 1;
        if (full) {
            if (!g.is_identity() && g.syllables().front().gen == hs.front().gen)
                return GroupWord::from_syllables(
                    std::vector<Syllable>(g.syllables().begin() + 1, g.syllables().end()), alphabet);
            return g;
        }
    }

    const auto cyc = cyclic_normal_form(h, alphabet);
    const auto& core = cyc.core.syllables();
    std::int64_t lo, hi;
    if (core.size() == 1 && alphabet.is_torsion(core.front().gen)) {
        const int k = alphabet.order(core.front().gen);
        lo = 0;
        hi = k / std::gcd<std::int64_t, std::int64_t>(core.front().exponent, k) - 1;
    } else {
        const auto span = letter_length(g) + letter_length(invert(g, alphabet)) + letter_length(cyc.conjugator) +
                          letter_length(invert(cyc.conjugator, alphabet));
        const auto n = static_cast<std::int64_t>(span / letter_length(cyc.core) + 1);
        lo = -n;
        hi = n;
    }
    GroupWord best = g;
    const GroupWord h_inv = invert(h, alphabet);
    GroupWord up = g, down = g;
    for (std::int64_t n = 1; n <= std::max(hi, -lo); ++n) {
        if (n <= hi) {
            up = multiply(h, up, alphabet);
            if (shortlex_less(up, best)) best = up;
        }
        if (-n >= lo) {
            down = multiply(h_inv, down, alphabet);
            if (shortlex_less(down, best)) best = down;
        }
    }
    return best;
}

}  // namespace

CosetQuandle::CosetQuandle(Alphabet alphabet, std::vector<CosetPart> parts)
    : alphabet_(std::move(alphabet)), parts_(std::move(parts))
{
    if (parts_.empty()) throw InputError("coset quandle needs at least one part");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        validate(parts_[i].h, alphabet_);
        validate(parts_[i].z, alphabet_);
        if (multiply(parts_[i].h, parts_[i].z, alphabet_) != multiply(parts_[i].z, parts_[i].h, alphabet_))
            throw InputError("part " + std::to_string(i) + ": h = " + format_word(parts_[i].h, alphabet_) +
                             " does not commute with z = " + format_word(parts_[i].z, alphabet_));
    }
}

CosetQuandle CosetQuandle::free_quandle(std::vector<std::string> generators)
{
    Alphabet a = Alphabet::free_group(std::move(generators));
    std::vector<CosetPart> parts;
    for (std::size_t g = 0; g < a.size(); ++g) {
        auto w = GroupWord::generator(g, a);
        parts.push_back({w, w});
    }
    return CosetQuandle(std::move(a), std::move(parts));
}

CosetQuandle CosetQuandle::free_k_quandle(std::vector<std::string> generators, int k)
{
    if (k < 2) throw InputError("free k-quandle needs k >= 2");
    Alphabet a = Alphabet::cyclic_product(std::move(generators), k);
    std::vector<CosetPart> parts;
    for (std::size_t g = 0; g < a.size(); ++g) {
        auto w = GroupWord::generator(g, a);
        parts.push_back({w, w});
    }
    return CosetQuandle(std::move(a), std::move(parts));
}

void CosetQuandle::check_element(const CosetElement& x) const
{
    if (x.part >= parts_.size()) throw InputError("coset element refers to part " + std::to_string(x.part));
    validate(x.rep, alphabet_);
}

CosetElement CosetQuandle::element(std::size_t part, const GroupWord& g) const
{
    if (part >= parts_.size()) throw InputError("coset element refers to part " + std::to_string(part));
    validate(g, alphabet_);
    return {part, shortest_in_coset(parts_[part].h, g, alphabet_)};
}

GroupWord CosetQuandle::representative(std::size_t part, const GroupWord& g, ChooserRule rule) const
{
    auto shortest = element(part, g).rep;
    if (rule == ChooserRule::kShortest) return shortest;
    const auto t = static_cast<std::int64_t>(letter_length(shortest) % 3) - 1;
    return multiply(power(parts_[part].h, t, alphabet_), shortest, alphabet_);
}

CosetElement CosetQuandle::op(const CosetElement& x, const CosetElement& y) const
{
    check_element(x);
    check_element(y);
    WordBuilder b(alphabet_);
    b.push_inverse(parts_[x.part].z);
    b.push(x.rep);
    b.push_inverse(y.rep);
    b.push(parts_[y.part].z);
    b.push(y.rep);
    return element(x.part, b.take());
}

CosetElement CosetQuandle::op_inv(const CosetElement& x, const CosetElement& y) const
{
    check_element(x);
    check_element(y);
    WordBuilder b(alphabet_);
    b.push(parts_[x.part].z);
    b.push(x.rep);
    b.push_inverse(y.rep);
    b.push_inverse(parts_[y.part].z);
    b.push(y.rep);
    return element(x.part, b.take());
}

std::vector<CosetElement> CosetQuandle::truncated_part(std::size_t part, int radius) const
{
    std::unordered_set<GroupWord, GroupWordHash> seen;
    std::vector<GroupWord> reps;
    for_each_ball_word(alphabet_, radius, [&](const GroupWord& w) {
        auto r = element(part, w).rep;
        if (letter_length(r) <= static_cast<std::size_t>(radius) && seen.insert(r).second) reps.push_back(r);
    });
    std::sort(reps.begin(), reps.end(), shortlex_less);
    std::vector<CosetElement> out;
    for (auto& r : reps) out.push_back({part, std::move(r)});
    return out;
}

std::vector<CosetElement> CosetQuandle::truncated_elements(int radius) const
{
    std::vector<CosetElement> out;
    for (std::size_t p = 0; p < parts_.size(); ++p) {
        auto part = truncated_part(p, radius);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

CosetQuandle free_product(const CosetQuandle& lhs, const CosetQuandle& rhs)
{
    const auto& a1 = lhs.alphabet();
    const auto& a2 = rhs.alphabet();
    std::vector<std::string> names = a1.names();
    std::vector<int> orders = a1.orders();
    for (std::size_t g = 0; g < a2.size(); ++g) {
        if (a1.index_of(a2.name(g))) throw InputError("free_product: generator name '" + a2.name(g) + "' collides");
        names.push_back(a2.name(g));
        orders.push_back(a2.order(g));
    }
    Alphabet joined(std::move(names), std::move(orders));
    auto shift = [&](const GroupWord& w) {
        std::vector<Syllable> syl = w.syllables();
        for (auto& s : syl) s.gen += a1.size();
        return GroupWord::from_syllables(syl, joined);
    };
    std::vector<CosetPart> parts = lhs.parts();
    for (const auto& p : rhs.parts()) parts.push_back({shift(p.h), shift(p.z)});
    return CosetQuandle(std::move(joined), std::move(parts));
}

std::optional<int> metric_distance(const CosetQuandle& quandle, const CosetElement& x, const CosetElement& y, int cap,
                                   int op_radius)
{
    const auto source = quandle.element(x.part, x.rep);
    const auto target = quandle.element(y.part, y.rep);
    if (source.part != target.part)
        throw DomainError("metric_distance: elements lie in different parts, hence different components");
    if (source == target) return 0;
    const auto ops = quandle.truncated_elements(op_radius);
    std::unordered_set<CosetElement, CosetElementHash> seen{source};
    std::vector<CosetElement> frontier{source};
    for (int depth = 1; depth <= cap && !frontier.empty(); ++depth) {
        std::vector<CosetElement> next;
        for (const auto& v : frontier)
            for (const auto& o : ops) {
                auto w = quandle.op(v, o);
                if (w == target) return depth;
                if (seen.insert(w).second) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

namespace {

struct TruncatedGraph {
  std::vector<CosetElement> states;
  std::vector<std::vector<std::size_t>> edges;
};

TruncatedGraph truncated_graph(const CosetQuandle& quandle, std::size_t part, int radius)
{
    TruncatedGraph g;
    g.states = quandle.truncated_part(part, radius);
    const auto ops = quandle.truncated_elements(radius);
    std::unordered_map<CosetElement, std::size_t, CosetElementHash> index;
    for (std::size_t i = 0; i < g.states.size(); ++i) index[g.states[i]] = i;
    g.edges.resize(g.states.size());
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        std::set<std::size_t> targets;
        for (const auto& o : ops) {
            auto it = index.find(quandle.op(g.states[i], o));
            if (it != index.end()) targets.insert(it->second);
        }
        g.edges[i].assign(targets.begin(), targets.end());
    }
    return g;
}

std::vector<int> graph_bfs(const TruncatedGraph& g, std::size_t source)
{
    std::vector<int> dist(g.states.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : g.edges[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

}  // namespace

TruncatedMetric truncated_eccentricity(const CosetQuandle& quandle, const CosetElement& base, int radius)
{
    const auto b = quandle.element(base.part, base.rep);
    const auto g = truncated_graph(quandle, b.part, radius);
    auto it = std::find(g.states.begin(), g.states.end(), b);
    if (it == g.states.end()) throw InputError("truncated_eccentricity: base lies outside the truncation radius");
    const auto dist = graph_bfs(g, static_cast<std::size_t>(it - g.states.begin()));
    TruncatedMetric m;
    m.radius = radius;
    m.states = g.states.size();
    for (int d : dist) {
        if (d < 0)
            ++m.unreachable;
        else
            m.value = std::max(m.value, d);
    }
    return m;
}

std::vector<TruncatedMetric> truncated_component_diameters(const CosetQuandle& quandle, int radius)
{
    std::vector<TruncatedMetric> out;
    for (std::size_t p = 0; p < quandle.parts().size(); ++p) {
        const auto g = truncated_graph(quandle, p, radius);
        TruncatedMetric m;
        m.radius = radius;
        m.states = g.states.size();
        for (std::size_t s = 0; s < g.states.size(); ++s)
            for (int d : graph_bfs(g, s)) {
                if (d < 0)
                    ++m.unreachable;
                else
                    m.value = std::max(m.value, d);
            }
        out.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const TableRack& rack)
{
    return {{"size", rack.size()}, {"op", rack.table()}};
}

std::vector<std::vector<int>> operation_table_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("op")) throw InputError("table JSON needs \"op\"");
    auto op = j.at("op").get<std::vector<std::vector<int>>>();
    if (j.contains("size") && j.at("size").get<std::size_t>() != op.size())
        throw InputError("table JSON: \"size\" disagrees with the number of rows");
    return op;
}

TableRack table_rack_from_json(const nlohmann::json& j)
{
    return TableRack(operation_table_from_json(j));
}

nlohmann::json to_json(const CosetQuandle& quandle)
{
    const auto& a = quandle.alphabet();
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : quandle.parts()) parts.push_back({{"h", format_word(p.h, a)}, {"z", format_word(p.z, a)}});
    return {{"generators", a.names()}, {"orders", a.orders()}, {"parts", parts}};
}

CosetQuandle coset_quandle_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("generators") || !j.contains("parts"))
        throw InputError("coset quandle JSON needs \"generators\" and \"parts\"");
    auto names = j.at("generators").get<std::vector<std::string>>();
    std::vector<int> orders(names.size(), kInfiniteOrder);
    if (j.contains("orders")) {
        const auto& o = j.at("orders");
        if (!o.is_array() || o.size() != names.size()) throw InputError("\"orders\" must match \"generators\"");
        for (std::size_t i = 0; i < o.size(); ++i) {
            if (o[i].is_null() || (o[i].is_string() && o[i].get<std::string>() == "inf"))
                orders[i] = kInfiniteOrder;
            else
                orders[i] = o[i].get<int>();
        }
    }
    Alphabet a(std::move(names), std::move(orders));
    std::vector<CosetPart> parts;
    for (const auto& p : j.at("parts"))
        parts.push_back({parse_word(p.at("h").get<std::string>(), a), parse_word(p.at("z").get<std::string>(), a)});
    return CosetQuandle(std::move(a), std::move(parts));
}

}  // namespace qforge
