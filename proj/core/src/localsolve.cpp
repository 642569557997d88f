#include "kummerlab/localsolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace kummerlab {

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mod_reduce(const Integer& c, u64 m) {
    Integer r = c % Integer(static_cast<unsigned long>(m));
    if (r < 0) r += static_cast<unsigned long>(m);
    return r.get_ui();
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 invmod(u64 a, u64 m) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t, newt);
        newt -= q * t;
        std::swap(r, newr);
        newr -= q * r;
    }
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<u64>(t);
}

struct State {
    std::array<u64, 6> x{};
    bool operator<(const State& o) const { return x < o.x; }
    bool operator==(const State& o) const { return x == o.x; }
};

enum class Enum1 { ok, budget, degenerate };

// BFS over precision levels on normalized primitive points. A state at
// level k is a primitive solution mod p^k with its first unit coordinate
// scaled to 1; every primitive Z_p solution reduces to exactly one state
// per level, so an empty level is an exhaustive insolubility proof.
class PadicSolver {
public:
    PadicSolver(const std::vector<std::vector<Integer>>& forms, const Integer& p,
                const SolveLimits& limits)
        : forms_(forms), limits_(limits) {
        n_ = static_cast<int>(forms[0].size());
        m_ = static_cast<int>(forms.size());
        p_ = p.get_ui();
        max_level_ = limits.max_level > 0 ? limits.max_level : (p_ == 2 ? 28 : 14);
        u64 pk = 1;
        pk_.push_back(1);
        for (int j = 1; j <= max_level_ + 1; ++j) {
            if (pk > (u64(1) << 40) / p_) break;
            pk *= p_;
            pk_.push_back(pk);
        }
        max_level_ = std::min<int>(max_level_, static_cast<int>(pk_.size()) - 2);
    }

    LocalSolveResult run() {
        LocalSolveResult res;
        if (max_level_ < 1) {
            res.detail = "modulus too large for the working precision";
            return res;
        }
        std::vector<State> states;
        Enum1 e1 = p_ == 2 ? enumerate_charts(states) : enumerate_solved(states);
        if (e1 == Enum1::degenerate) {
            states.clear();
            e1 = enumerate_charts(states);
        }
        if (e1 != Enum1::ok) {
            res.detail = "level-1 enumeration budget exceeded";
            return res;
        }

        // Depth-first over lifting branches: certification usually fires a
        // few levels down one surviving branch, while dead branches are cut
        // as soon as the linearized conditions become inconsistent.
        std::vector<std::pair<State, int>> stack;
        for (const auto& s : states) stack.push_back({s, 1});
        std::size_t visited = 0;
        bool budget_hit = false, frontier_hit = false;
        std::set<State> next;  // scratch for children
        while (!stack.empty()) {
            auto [s, level] = stack.back();
            stack.pop_back();
            if (++visited > limits_.max_states) {
                budget_hit = true;
                break;
            }
            if (certify(s, level, res)) return res;
            if (level == max_level_) {
                frontier_hit = true;
                continue;
            }
            next.clear();
            int fan = lift_children(s, level, next);
            if (fan < 0) {
                budget_hit = true;
                continue;
            }
            for (const auto& child : next) stack.push_back({child, level + 1});
        }
        if (!budget_hit && !frontier_hit) {
            res.verdict = LocalVerdict::insoluble;
            res.detail = "the primitive solution tree dies out (exhaustive over " +
                         std::to_string(p_) + "-adic lifts)";
            return res;
        }
        res.verdict = LocalVerdict::undecided;
        res.detail = budget_hit ? "node budget exceeded"
                                : "no Hensel certificate up to level " +
                                      std::to_string(max_level_);
        return res;
    }

private:
    u64 coeff(int m, int i, int level) const {
        return mod_reduce(forms_[m][i], pk_[level]);
    }

    u64 eval_form(int m, const State& s, int level) const {
        u64 mod = pk_[level];
        u128 acc = 0;
        for (int i = 0; i < n_; ++i) {
            u64 xi = s.x[i] % mod;
            acc += u128(coeff(m, i, level)) * mulmod(xi, xi, mod);
        }
        return static_cast<u64>(acc % mod);
    }

    int pivot_of(const State& s) const {
        for (int i = 0; i < n_; ++i)
            if (s.x[i] % p_ != 0) return i;
        return -1;
    }

    void normalize(State& s, int level) {
        u64 mod = pk_[level];
        int c = pivot_of(s);
        u64 inv = invmod(s.x[c] % mod, mod);
        for (int i = 0; i < n_; ++i) s.x[i] = mulmod(s.x[i] % mod, inv, mod);
    }

    bool satisfies_level1(const State& s) const {
        for (int m = 0; m < m_; ++m)
            if (eval_form(m, s, 1) != 0) return false;
        return true;
    }

    // Full chart enumeration of P^{n-1}(F_p).
    Enum1 enumerate_charts(std::vector<State>& states) {
        double budget = 0;
        for (int c = 0; c < n_; ++c) budget += std::pow(double(p_), n_ - 1 - c);
        if (budget > double(limits_.max_enumeration)) return Enum1::budget;
        State s;
        for (int c = 0; c < n_; ++c) {
            s.x.fill(0);
            s.x[c] = 1;
            std::vector<u64> vals(n_ - 1 - c, 0);
            for (;;) {
                for (std::size_t f = 0; f < vals.size(); ++f) s.x[c + 1 + f] = vals[f];
                if (satisfies_level1(s)) {
                    states.push_back(s);
                    if (states.size() > limits_.max_states) return Enum1::budget;
                }
                std::size_t f = 0;
                while (f < vals.size() && ++vals[f] == p_) vals[f++] = 0;
                if (f == vals.size() || vals.empty()) break;
            }
        }
        return Enum1::ok;
    }

    // Row-reduce the coefficient matrix mod p to express m variables through
    // the others, then sweep F_p^{n-m} with a square-root table. Complete
    // whenever the matrix has full rank mod p.
    Enum1 enumerate_solved(std::vector<State>& states) {
        std::vector<std::vector<u64>> rows(m_, std::vector<u64>(n_));
        for (int m = 0; m < m_; ++m)
            for (int i = 0; i < n_; ++i) rows[m][i] = coeff(m, i, 1);
        std::vector<int> solved;
        int r = 0;
        for (int col = 0; col < n_ && r < m_; ++col) {
            int sel = -1;
            for (int m = r; m < m_; ++m)
                if (rows[m][col] % p_ != 0) {
                    sel = m;
                    break;
                }
            if (sel < 0) continue;
            std::swap(rows[r], rows[sel]);
            u64 inv = invmod(rows[r][col], p_);
            for (int i = 0; i < n_; ++i) rows[r][i] = mulmod(rows[r][i], inv, p_);
            for (int m = 0; m < m_; ++m) {
                if (m == r || rows[m][col] == 0) continue;
                u64 f = rows[m][col];
                for (int i = 0; i < n_; ++i)
                    rows[m][i] = (rows[m][i] + (p_ - f) * rows[r][i]) % p_;
            }
            solved.push_back(col);
            ++r;
        }
        if (r < m_) return Enum1::degenerate;

        std::vector<int> free_vars;
        for (int i = 0; i < n_; ++i)
            if (std::find(solved.begin(), solved.end(), i) == solved.end())
                free_vars.push_back(i);
        if (std::pow(double(p_), free_vars.size()) > double(limits_.max_enumeration))
            return Enum1::budget;

        std::vector<long> root(p_, -1);
        for (u64 t = 0; t < p_; ++t) root[mulmod(t, t, p_)] = static_cast<long>(t);

        std::set<State> seen;
        std::vector<u64> vals(free_vars.size(), 0);
        for (;;) {
            std::array<long, 3> rts{};
            bool feasible = true;
            for (int m = 0; m < m_ && feasible; ++m) {
                u128 acc = 0;
                for (std::size_t f = 0; f < free_vars.size(); ++f)
                    acc += u128(rows[m][free_vars[f]]) * mulmod(vals[f], vals[f], p_);
                u64 v = static_cast<u64>(acc % p_);
                rts[m] = root[v ? p_ - v : 0];
                if (rts[m] < 0) feasible = false;
            }
            if (feasible) {
                for (int mask = 0; mask < (1 << m_); ++mask) {
                    State s;
                    s.x.fill(0);
                    bool nonzero = false;
                    for (std::size_t f = 0; f < free_vars.size(); ++f) {
                        s.x[free_vars[f]] = vals[f];
                        nonzero |= vals[f] != 0;
                    }
                    for (int m = 0; m < m_; ++m) {
                        u64 rv = static_cast<u64>(rts[m]);
                        if ((mask >> m & 1) && rv) rv = p_ - rv;
                        s.x[solved[m]] = rv;
                        nonzero |= rv != 0;
                    }
                    if (!nonzero) continue;
                    normalize(s, 1);
                    if (seen.insert(s).second) {
                        states.push_back(s);
                        if (states.size() > limits_.max_states) return Enum1::budget;
                    }
                }
            }
            std::size_t f = 0;
            while (f < vals.size() && ++vals[f] == p_) vals[f++] = 0;
            if (f == vals.size() || vals.empty()) break;
        }
        return Enum1::ok;
    }

    // Children of s from level to level+1; returns fan-out or -1 on budget.
    int lift_children(const State& s, int level, std::set<State>& next) {
        u64 modk = pk_[level], modk1 = pk_[level + 1];
        int c = pivot_of(s);
        // Q(x + p^k y) = Q(x) + p^k * grad(x).y  (mod p^{k+1}), y_c = 0.
        std::vector<std::vector<u64>> lin(m_, std::vector<u64>(n_, 0));
        std::vector<u64> rhs(m_);
        for (int m = 0; m < m_; ++m) {
            u64 q = eval_form(m, s, level + 1);
            rhs[m] = (q / modk) % p_;
            rhs[m] = rhs[m] ? p_ - rhs[m] : 0;  // move to the right-hand side
            for (int i = 0; i < n_; ++i)
                if (i != c)
                    lin[m][i] = mulmod(2 % p_, mulmod(coeff(m, i, 1), s.x[i] % p_, p_), p_);
        }
        std::vector<int> pivot_cols;
        int r = 0;
        for (int col = 0; col < n_ && r < m_; ++col) {
            if (col == c) continue;
            int sel = -1;
            for (int m = r; m < m_; ++m)
                if (lin[m][col]) {
                    sel = m;
                    break;
                }
            if (sel < 0) continue;
            std::swap(lin[r], lin[sel]);
            std::swap(rhs[r], rhs[sel]);
            u64 inv = invmod(lin[r][col], p_);
            for (int i = 0; i < n_; ++i) lin[r][i] = mulmod(lin[r][i], inv, p_);
            rhs[r] = mulmod(rhs[r], inv, p_);
            for (int m = 0; m < m_; ++m) {
                if (m == r || lin[m][col] == 0) continue;
                u64 f = lin[m][col];
                for (int i = 0; i < n_; ++i)
                    lin[m][i] = (lin[m][i] + (p_ - f) * lin[r][i]) % p_;
                rhs[m] = (rhs[m] + (p_ - f) * rhs[r]) % p_;
            }
            pivot_cols.push_back(col);
            ++r;
        }
        for (int m = r; m < m_; ++m)
            if (rhs[m] % p_) return 0;  // inconsistent: branch dies
        std::vector<int> free_cols;
        for (int i = 0; i < n_; ++i)
            if (i != c &&
                std::find(pivot_cols.begin(), pivot_cols.end(), i) == pivot_cols.end())
                free_cols.push_back(i);
        double fan = std::pow(double(p_), free_cols.size());
        if (fan > 1e6) return -1;  // unexplorably singular branch

        std::vector<u64> y(n_, 0);
        std::vector<u64> fvals(free_cols.size(), 0);
        int emitted = 0;
        for (;;) {
            for (std::size_t f = 0; f < free_cols.size(); ++f) y[free_cols[f]] = fvals[f];
            y[c] = 0;
            for (int m = 0; m < r; ++m) {
                u128 acc = rhs[m];
                for (int fcol : free_cols)
                    if (lin[m][fcol])
                        acc += u128(p_ - lin[m][fcol]) * y[fcol];
                y[pivot_cols[m]] = static_cast<u64>(acc % p_);
            }
            State child = s;
            for (int i = 0; i < n_; ++i)
                child.x[i] = (child.x[i] + y[i] * modk) % modk1;
            next.insert(child);
            ++emitted;
            std::size_t f = 0;
            while (f < fvals.size() && ++fvals[f] == p_) fvals[f++] = 0;
            if (f == fvals.size() || fvals.empty()) break;
        }
        return emitted;
    }

    // Newton: |F(x)| <= p^{-(2e+1)} with an m x m Jacobian minor of
    // valuation e yields a Z_p solution.
    bool certify(const State& s, int level, LocalSolveResult& res) {
        u64 mod = pk_[level];
        std::vector<std::array<u64, 3>> col(n_);
        for (int i = 0; i < n_; ++i)
            for (int m = 0; m < m_; ++m)
                col[i][m] =
                    mulmod(2 % mod, mulmod(coeff(m, i, level), s.x[i] % mod, mod), mod);
        int best = -1;
        auto consider = [&](u64 det) {
            det %= mod;
            if (det == 0) return;
            int e = 0;
            while (det % p_ == 0) {
                det /= p_;
                ++e;
            }
            if (best < 0 || e < best) best = e;
        };
        if (m_ == 1) {
            for (int i = 0; i < n_; ++i) consider(col[i][0]);
        } else if (m_ == 2) {
            for (int a = 0; a < n_; ++a)
                for (int b = a + 1; b < n_; ++b)
                    consider((mulmod(col[a][0], col[b][1], mod) + mod -
                              mulmod(col[a][1], col[b][0], mod)) %
                             mod);
        } else {
            for (int a = 0; a < n_; ++a)
                for (int b = a + 1; b < n_; ++b)
                    for (int cc = b + 1; cc < n_; ++cc) {
                        u128 pos = u128(col[a][0]) * mulmod(col[b][1], col[cc][2], mod) +
                                   u128(col[b][0]) * mulmod(col[cc][1], col[a][2], mod) +
                                   u128(col[cc][0]) * mulmod(col[a][1], col[b][2], mod);
                        u128 neg = u128(col[a][0]) * mulmod(col[cc][1], col[b][2], mod) +
                                   u128(col[b][0]) * mulmod(col[a][1], col[cc][2], mod) +
                                   u128(col[cc][0]) * mulmod(col[b][1], col[a][2], mod);
                        consider(static_cast<u64>((pos + u128(mod) * mod * 3 - neg) % mod));
                    }
        }
        if (best >= 0 && 2 * best + 1 <= level) {
            res.verdict = LocalVerdict::soluble;
            PadicWitness w;
            w.precision = level;
            w.minor_valuation = best;
            for (int i = 0; i < n_; ++i) w.point.push_back(static_cast<long long>(s.x[i]));
            res.padic = w;
            return true;
        }
        return false;
    }

    const std::vector<std::vector<Integer>>& forms_;
    SolveLimits limits_;
    int n_, m_;
    u64 p_;
    int max_level_;
    std::vector<u64> pk_;
};

// Exact kernel generator of the column submatrix, when one-dimensional.
std::optional<std::vector<Rational>> kernel_generator(
    const std::vector<std::vector<Integer>>& forms, const std::vector<int>& cols) {
    const int m = static_cast<int>(forms.size());
    const int n = static_cast<int>(cols.size());
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rational(forms[i][cols[j]]);
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        int sel = -1;
        for (int i = r; i < m; ++i)
            if (a[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[r], a[sel]);
        Rational inv = a[r][col];
        for (int j = 0; j < n; ++j) a[r][j] /= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (n - r != 1) return std::nullopt;
    int free_col = -1;
    for (int j = 0; j < n; ++j)
        if (std::find(pivot_col.begin(), pivot_col.end(), j) == pivot_col.end())
            free_col = j;
    std::vector<Rational> gen(n, 0);
    gen[free_col] = 1;
    for (int i = 0; i < r; ++i) gen[pivot_col[i]] = -a[i][free_col];
    return gen;
}

}  // namespace

LocalSolveResult solve_padic(const std::vector<std::vector<Integer>>& forms,
                             const Integer& p, const SolveLimits& limits) {
    if (forms.empty() || forms[0].empty())
        throw domain_error("solve_padic: empty system");
    if (!p.fits_ulong_p()) {
        LocalSolveResult r;
        r.detail = "prime does not fit the working word size";
        return r;
    }
    PadicSolver solver(forms, p, limits);
    return solver.run();
}

LocalSolveResult solve_real(const std::vector<std::vector<Integer>>& forms) {
    const int m = static_cast<int>(forms.size());
    const int n = static_cast<int>(forms[0].size());
    LocalSolveResult res;
    // A real projective point exists iff some X >= 0, X != 0 solves QX = 0
    // (take X_i = x_i^2). Extreme rays of that cone have support of size at
    // most rank(Q) + 1 and are kernel generators of their column submatrix,
    // so enumerating small supports decides feasibility exactly.
    for (int size = 1; size <= m + 1 && size <= n; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            auto gen = kernel_generator(forms, idx);
            if (gen) {
                bool pos = std::all_of(gen->begin(), gen->end(),
                                       [](const Rational& x) { return x > 0; });
                bool neg = std::all_of(gen->begin(), gen->end(),
                                       [](const Rational& x) { return x < 0; });
                if (pos || neg) {
                    std::vector<Rational> X(n, 0);
                    for (int i = 0; i < size; ++i) X[idx[i]] = abs((*gen)[i]);
                    res.verdict = LocalVerdict::soluble;
                    res.real_squares = X;
                    return res;
                }
            }
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    res.verdict = LocalVerdict::insoluble;
    res.detail = "real sign obstruction: the nonnegative kernel cone is trivial";
    return res;
}

LocalSolveResult solve_local(const std::vector<std::vector<Integer>>& forms,
                             const Place& v, const SolveLimits& limits) {
    return v.is_infinite() ? solve_real(forms) : solve_padic(forms, v.prime(), limits);
}

bool verify_padic_witness(const std::vector<std::vector<Integer>>& forms,
                          const Integer& p, const PadicWitness& w) {
    if (w.precision < 1 || 2 * w.minor_valuation + 1 > w.precision) return false;
    if (w.point.size() != forms[0].size()) return false;
    Integer pk = 1;
    for (int i = 0; i < w.precision; ++i) pk *= p;
    bool primitive = false;
    for (long long c : w.point)
        if (Integer(static_cast<long>(c)) % p != 0) primitive = true;
    if (!primitive) return false;
    for (const auto& form : forms) {
        Integer acc = 0;
        for (std::size_t i = 0; i < form.size(); ++i) {
            Integer xi(static_cast<long>(w.point[i]));
            acc += form[i] * xi * xi;
        }
        if (acc % pk != 0) return false;
    }
    const int m = static_cast<int>(forms.size());
    const int n = static_cast<int>(forms[0].size());
    std::vector<std::vector<Integer>> jac(m, std::vector<Integer>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            jac[i][j] = 2 * forms[i][j] * Integer(static_cast<long>(w.point[j]));
    auto det_of = [&](const std::vector<int>& cs) -> Integer {
        if (m == 1) return jac[0][cs[0]];
        if (m == 2) return jac[0][cs[0]] * jac[1][cs[1]] - jac[0][cs[1]] * jac[1][cs[0]];
        static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                       {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
        Integer d = 0;
        for (int t = 0; t < 6; ++t) {
            Integer term =
                jac[0][cs[perm[t][0]]] * jac[1][cs[perm[t][1]]] * jac[2][cs[perm[t][2]]];
            d += t < 3 ? term : -term;
        }
        return d;
    };
    Place vp = Place::finite(p);
    std::vector<int> cols(m);
    for (int i = 0; i < m; ++i) cols[i] = i;
    for (;;) {
        Integer d = det_of(cols);
        if (d != 0 && valuation(d, vp) == w.minor_valuation) return true;
        int i = m - 1;
        while (i >= 0 && cols[i] == n - m + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (int j = i + 1; j < m; ++j) cols[j] = cols[j - 1] + 1;
    }
    return false;
}

bool verify_real_squares(const std::vector<std::vector<Integer>>& forms,
                         const std::vector<Rational>& squares) {
    if (squares.size() != forms[0].size()) return false;
    bool nonzero = false;
    for (const auto& x : squares) {
        if (x < 0) return false;
        if (x > 0) nonzero = true;
    }
    if (!nonzero) return false;
    for (const auto& form : forms) {
        Rational acc = 0;
        for (std::size_t i = 0; i < form.size(); ++i)
            acc += Rational(form[i]) * squares[i];
        if (acc != 0) return false;
    }
    return true;
}

}  // namespace kummerlab
