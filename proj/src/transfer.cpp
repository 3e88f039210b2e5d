#include "transferkit/transfer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "transferkit/error.hpp"

namespace transferkit {

namespace {

// Dense relation matrix over subgroups, used by validation and completion.
struct Matrix {
  int s;
  std::vector<char> m;
  explicit Matrix(int n) : s(n), m(static_cast<std::size_t>(n) * n, 0) {
    for (int i = 0; i < n; ++i) at(i, i) = 1;
  }
  char& at(int k, int h) { return m[static_cast<std::size_t>(k) * s + h]; }
  char at(int k, int h) const { return m[static_cast<std::size_t>(k) * s + h]; }
};

Matrix to_matrix(const SubgroupLattice& lat, const Bitset& bits) {
  Matrix r(lat.size());
  for_each_bit(bits, [&](int i) {
    auto [k, h] = lat.strict_pairs()[i];
    r.at(k, h) = 1;
  });
  return r;
}

Bitset to_bits(const SubgroupLattice& lat, const Matrix& r) {
  Bitset b(lat.strict_pairs().size());
  for (std::size_t i = 0; i < lat.strict_pairs().size(); ++i) {
    auto [k, h] = lat.strict_pairs()[i];
    if (r.at(k, h)) b[i] = true;
  }
  return b;
}

void conjugation_closure(const SubgroupLattice& lat, Matrix& r) {
  const int s = lat.size(), n = lat.group().order();
  Matrix out = r;
  for (int k = 0; k < s; ++k)
    for (int h = 0; h < s; ++h)
      if (k != h && r.at(k, h))
        for (Element a = 0; a < n; ++a) out.at(lat.conjugate(k, a), lat.conjugate(h, a)) = 1;
  r = std::move(out);
}

void restriction_closure(const SubgroupLattice& lat, Matrix& r) {
  const int s = lat.size();
  Matrix out = r;
  for (int k = 0; k < s; ++k)
    for (int h = 0; h < s; ++h)
      if (k != h && r.at(k, h))
        for (int l = 0; l <= h; ++l)
          if (lat.contains(l, h)) out.at(lat.meet(k, l), l) = 1;
  r = std::move(out);
}

void transitive_closure(Matrix& r) {
  for (int mid = 0; mid < r.s; ++mid)
    for (int i = 0; i < r.s; ++i)
      if (r.at(i, mid))
        for (int j = 0; j < r.s; ++j)
          if (r.at(mid, j)) r.at(i, j) = 1;
}

Bitset relation_bits(const SubgroupLattice& lat, const std::vector<Pair>& relation) {
  Bitset b(lat.strict_pairs().size());
  for (auto [k, h] : relation) {
    if (k < 0 || h < 0 || k >= lat.size() || h >= lat.size())
      throw InputError("subgroup index out of range in pair (" + std::to_string(k) + "," + std::to_string(h) + ")");
    if (!lat.contains(k, h))
      throw NotRefining("pair (" + std::to_string(k) + "," + std::to_string(h) + "): " + lat.label(k) +
                        " is not contained in " + lat.label(h));
    if (k != h) b[lat.pair_index(k, h)] = true;
  }
  return b;
}

std::string pair_str(const SubgroupLattice& lat, Pair p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")=" + lat.label(p.first) + "->" +
         lat.label(p.second);
}

}  // namespace

TransferSystem::TransferSystem(LatticePtr lattice, Bitset strict_bits)
    : lattice_(std::move(lattice)), bits_(std::move(strict_bits)) {
  if (bits_.size() != lattice_->strict_pairs().size())
    throw std::invalid_argument("transfer system bit width does not match the lattice");
}

TransferSystem TransferSystem::trivial(LatticePtr lattice) {
  std::size_t n = lattice->strict_pairs().size();
  return TransferSystem(std::move(lattice), Bitset(n));
}

TransferSystem TransferSystem::complete(LatticePtr lattice) {
  Bitset b(lattice->strict_pairs().size());
  b.set();
  return TransferSystem(std::move(lattice), std::move(b));
}

TransferSystem TransferSystem::from_pairs(LatticePtr lattice, const std::vector<Pair>& pairs) {
  auto v = validate(*lattice, pairs);
  if (!v.empty()) throw InputError("not a transfer system: " + v.front().message);
  Bitset b = relation_bits(*lattice, pairs);
  return TransferSystem(std::move(lattice), std::move(b));
}

std::vector<Pair> TransferSystem::pairs() const {
  std::vector<Pair> out;
  for_each_bit(bits_, [&](int i) { out.push_back(lattice_->strict_pairs()[i]); });
  return out;
}

std::vector<SubgroupId> TransferSystem::top_level_sources() const {
  std::vector<SubgroupId> out;
  SubgroupId g = lattice_->top();
  for (int k = 0; k < lattice_->size(); ++k)
    if (relates(k, g)) out.push_back(k);
  return out;
}

std::vector<Violation> validate(const SubgroupLattice& lat, const std::vector<Pair>& relation) {
  std::vector<Violation> out;
  const int s = lat.size();
  Matrix r(s);
  for (auto [k, h] : relation) {
    if (k < 0 || h < 0 || k >= s || h >= s)
      throw InputError("subgroup index out of range in pair (" + std::to_string(k) + "," + std::to_string(h) + ")");
    if (!lat.contains(k, h)) {
      out.push_back({"refines", {k, h}, {k, h}, -1, -1, "pair " + pair_str(lat, {k, h}) + " does not refine containment"});
      continue;
    }
    r.at(k, h) = 1;
  }
  auto missing_seen = [&](const std::string& axiom, Pair p) {
    for (const auto& v : out)
      if (v.axiom == axiom && v.missing == p) return true;
    return false;
  };
  for (int h = 0; h < s; ++h)
    for (int k = 0; k < s; ++k) {
      if (k == h || !r.at(k, h)) continue;
      for (Element a = 0; a < lat.group().order(); ++a) {
        Pair need{lat.conjugate(k, a), lat.conjugate(h, a)};
        if (!r.at(need.first, need.second) && !missing_seen("conjugation", need))
          out.push_back({"conjugation", {k, h}, need, a, -1,
                         "conjugating " + pair_str(lat, {k, h}) + " by " + lat.group().element_label(a) +
                             " requires " + pair_str(lat, need)});
      }
      for (int l = 0; l <= h; ++l) {
        if (!lat.contains(l, h)) continue;
        Pair need{lat.meet(k, l), l};
        if (!r.at(need.first, need.second) && !missing_seen("restriction", need))
          out.push_back({"restriction", {k, h}, need, -1, l,
                         "restricting " + pair_str(lat, {k, h}) + " to " + lat.label(l) + " requires " +
                             pair_str(lat, need)});
      }
      for (int j = 0; j < s; ++j) {
        if (j == h || !r.at(h, j)) continue;
        Pair need{k, j};
        if (!r.at(k, j) && !missing_seen("transitivity", need))
          out.push_back({"transitivity", {k, h}, need, -1, h,
                         "composing " + pair_str(lat, {k, h}) + " with " + pair_str(lat, {h, j}) + " requires " +
                             pair_str(lat, need)});
      }
    }
  return out;
}

RubinStages rubin_stages(const SubgroupLattice& lat, const std::vector<Pair>& relation) {
  RubinStages st;
  st.r0 = relation_bits(lat, relation);
  Matrix r = to_matrix(lat, st.r0);
  conjugation_closure(lat, r);
  st.r1 = to_bits(lat, r);
  restriction_closure(lat, r);
  st.r2 = to_bits(lat, r);
  transitive_closure(r);
  st.r3 = to_bits(lat, r);
  return st;
}

TransferSystem rubin_complete(const LatticePtr& lattice, const std::vector<Pair>& relation) {
  return TransferSystem(lattice, rubin_stages(*lattice, relation).r3);
}

TransferSystem meet(const TransferSystem& a, const TransferSystem& b) {
  if (&a.lattice() != &b.lattice()) throw std::invalid_argument("meet of transfer systems over different lattices");
  return TransferSystem(a.lattice_ptr(), a.bits() & b.bits());
}

TransferSystem join(const TransferSystem& a, const TransferSystem& b) {
  if (&a.lattice() != &b.lattice()) throw std::invalid_argument("join of transfer systems over different lattices");
  auto p = a.pairs();
  auto q = b.pairs();
  p.insert(p.end(), q.begin(), q.end());
  return rubin_complete(a.lattice_ptr(), p);
}

// ---- enumeration ----------------------------------------------------------

namespace {

// Relation as one 64-bit row per source subgroup: row[k] bit h means k → h.
using Rows = std::vector<std::uint64_t>;

struct Enumerator {
  const SubgroupLattice& lat;
  int s;
  int npairs;
  std::vector<Rows> generated;  // conjugation + restriction closure of each strict pair
  std::size_t max_results;
  std::atomic<std::size_t> produced{0};

  Enumerator(const SubgroupLattice& l, std::size_t max) : lat(l), s(l.size()), max_results(max) {
    npairs = static_cast<int>(lat.strict_pairs().size());
    generated.assign(npairs, Rows(s, 0));
    for (int p = 0; p < npairs; ++p) {
      Bitset one(npairs);
      one[p] = true;
      Matrix r = to_matrix(lat, one);
      conjugation_closure(lat, r);
      restriction_closure(lat, r);
      for (int k = 0; k < s; ++k)
        for (int h = 0; h < s; ++h)
          if (k != h && r.at(k, h)) generated[p][k] |= std::uint64_t{1} << h;
    }
  }

  bool has(const Rows& r, int p) const {
    auto [k, h] = lat.strict_pairs()[p];
    return r[k] >> h & 1;
  }

  void close(Rows& r) const {
    for (int mid = 0; mid < s; ++mid)
      for (int i = 0; i < s; ++i)
        if (r[i] >> mid & 1) r[i] |= r[mid];
  }

  static bool conflicts(const Rows& in, const Rows& out) {
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i] & out[i]) return true;
    return false;
  }

  Bitset to_bitset(const Rows& r) const {
    Bitset b(npairs);
    for (int p = 0; p < npairs; ++p)
      if (has(r, p)) b[p] = true;
    return b;
  }

  struct State {
    int depth;
    Rows in, out;
  };

  // Children of a state at depth < npairs: forced pairs pass through, free
  // pairs branch on exclusion then inclusion, and an inclusion whose closure
  // hits an excluded pair is pruned.
  template <class F>
  void expand(State&& st, F&& emit) const {
    int p = st.depth;
    if (has(st.in, p)) {
      st.depth++;
      emit(std::move(st));
      return;
    }
    Rows in2 = st.in;
    for (int k = 0; k < s; ++k) in2[k] |= generated[p][k];
    close(in2);
    State excl{p + 1, std::move(st.in), st.out};
    auto [k, h] = lat.strict_pairs()[p];
    excl.out[k] |= std::uint64_t{1} << h;
    emit(std::move(excl));
    if (!conflicts(in2, st.out)) emit(State{p + 1, std::move(in2), std::move(st.out)});
  }

  void dfs(State st, std::vector<Bitset>& results) {
    if (st.depth == npairs) {
      if (produced.fetch_add(1) + 1 > max_results)
        throw SearchBoundExceeded("more than " + std::to_string(max_results) + " transfer systems");
      results.push_back(to_bitset(st.in));
      return;
    }
    expand(std::move(st), [&](State&& child) { dfs(std::move(child), results); });
  }
};

std::filesystem::path cache_file(const std::filesystem::path& dir, const SubgroupLattice& lat) {
  return dir / ("tr-" + lat.group().hash().substr(0, 32) + ".txt");
}

std::optional<std::vector<Bitset>> read_cache(const std::filesystem::path& file, const SubgroupLattice& lat) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string magic, hash;
  std::size_t npairs = 0, count = 0;
  if (!(in >> magic >> hash >> npairs >> count)) return std::nullopt;
  if (magic != "transferkit-tr-v1" || hash != lat.group().hash() || npairs != lat.strict_pairs().size())
    return std::nullopt;
  std::vector<Bitset> out;
  out.reserve(count);
  std::string line;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> line)) return std::nullopt;
    try {
      out.push_back(bitset_from_hex(line, npairs));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return out;
}

void write_cache(const std::filesystem::path& file, const SubgroupLattice& lat, const std::vector<Bitset>& rows) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  auto tmp = file;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << "transferkit-tr-v1 " << lat.group().hash() << ' ' << lat.strict_pairs().size() << ' ' << rows.size()
        << '\n';
    for (const auto& b : rows) out << bitset_to_hex(b) << '\n';
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

std::filesystem::path cache_dir_from_env() {
  const char* v = std::getenv("TRANSFERKIT_CACHE");
  return v && *v ? std::filesystem::path(v) : std::filesystem::path();
}

std::vector<TransferSystem> enumerate_all(const LatticePtr& lattice, const EnumerateOptions& options) {
  const SubgroupLattice& lat = *lattice;
  if (lat.size() > 64)
    throw SearchBoundExceeded("enumeration supports at most 64 subgroups; " + lat.group().name() + " has " +
                              std::to_string(lat.size()));
  std::vector<Bitset> found;
  bool from_cache = false;
  if (!options.cache_dir.empty()) {
    if (auto cached = read_cache(cache_file(options.cache_dir, lat), lat)) {
      found = std::move(*cached);
      from_cache = true;
    }
  }
  if (!from_cache) {
    Enumerator en(lat, options.max_results);
    using State = Enumerator::State;
    std::vector<State> frontier;
    frontier.push_back(State{0, Rows(lat.size(), 0), Rows(lat.size(), 0)});
    const std::size_t target = options.jobs > 1 ? static_cast<std::size_t>(options.jobs) * 16 : 1;
    while (frontier.size() < target) {
      bool grew = false;
      std::vector<State> next;
      for (auto& st : frontier) {
        if (st.depth == en.npairs) {
          next.push_back(std::move(st));
          continue;
        }
        grew = true;
        en.expand(std::move(st), [&](State&& c) { next.push_back(std::move(c)); });
      }
      frontier = std::move(next);
      if (!grew) break;
    }
    int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(frontier.size())));
    std::vector<std::vector<Bitset>> partial(jobs);
    std::atomic<std::size_t> next_task{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&](int w) {
      try {
        for (std::size_t t; (t = next_task.fetch_add(1)) < frontier.size();) en.dfs(std::move(frontier[t]), partial[w]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next_task = frontier.size();
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& part : partial)
      for (auto& b : part) found.push_back(std::move(b));
    std::sort(found.begin(), found.end(), bitset_less);
    if (!options.cache_dir.empty()) write_cache(cache_file(options.cache_dir, lat), lat, found);
  }
  std::vector<TransferSystem> out;
  out.reserve(found.size());
  for (auto& b : found) out.emplace_back(lattice, std::move(b));
  return out;
}

// ---- disk-like ------------------------------------------------------------

bool disklike_by_intersection(const TransferSystem& t) {
  const SubgroupLattice& lat = t.lattice();
  auto sources = t.top_level_sources();
  for (auto [k, h] : t.pairs()) {
    bool witnessed = false;
    for (SubgroupId kp : sources)
      if (lat.meet(h, kp) == k) {
        witnessed = true;
        break;
      }
    if (!witnessed) return false;
  }
  return true;
}

TransferSystem disklike_core(const TransferSystem& t) {
  std::vector<Pair> top;
  for (SubgroupId k : t.top_level_sources()) top.push_back({k, t.lattice().top()});
  return rubin_complete(t.lattice_ptr(), top);
}

bool disklike_by_generation(const TransferSystem& t) { return disklike_core(t) == t; }

bool is_disklike(const TransferSystem& t, bool cross_check) {
  bool b = disklike_by_intersection(t);
  if (cross_check && b != disklike_by_generation(t))
    throw std::logic_error("disk-like characterizations disagree on " + pairs_to_string(t.lattice(), t.pairs()));
  return b;
}

std::string pairs_to_string(const SubgroupLattice& lat, const std::vector<Pair>& pairs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) os << ", ";
    os << lat.label(pairs[i].first) << "->" << lat.label(pairs[i].second);
  }
  os << '}';
  return os.str();
}

}  // namespace transferkit
