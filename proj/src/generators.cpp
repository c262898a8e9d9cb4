#include "ppspec/generators.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

namespace ppspec {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

// ---------------------------------------------------------------------------
// lattice

class LatticeSource final : public PointSource {
public:
    LatticeSource(std::vector<std::vector<double>> basis, int colors, std::vector<double> origin)
        : basis_(std::move(basis)), origin_(std::move(origin)), colors_(colors)
    {
        dim_ = static_cast<int>(basis_.size());
        if (dim_ < 1 || dim_ > 2)
            throw std::invalid_argument("lattice_source: need 1 or 2 basis vectors");
        for (const auto& v : basis_)
            if (static_cast<int>(v.size()) != dim_)
                throw std::invalid_argument("lattice_source: basis vectors must have length d");
        if (colors_ < 1)
            throw std::invalid_argument("lattice_source: colors must be >= 1");
        if (origin_.empty())
            origin_.assign(static_cast<std::size_t>(dim_), 0.0);
        if (static_cast<int>(origin_.size()) != dim_)
            throw std::invalid_argument("lattice_source: origin dimension mismatch");
        if (dim_ == 1) {
            det_ = basis_[0][0];
        } else {
            det_ = basis_[0][0] * basis_[1][1] - basis_[1][0] * basis_[0][1];
        }
        if (std::abs(det_) < 1e-12)
            throw std::invalid_argument("lattice_source: singular basis");
    }

    std::string name() const override
    {
        std::ostringstream os;
        os << "lattice(d=" << dim_ << ", m=" << colors_ << ")";
        return os.str();
    }
    int dim() const override { return dim_; }
    int colors() const override { return colors_; }
    bool exact() const override { return false; }

    std::optional<double> period() const override
    {
        if (dim_ != 1)
            return std::nullopt;
        return std::abs(basis_[0][0]) * colors_;
    }

    MultiSetPatch window(const Region& a) const override
    {
        const auto lo = a.lo();
        const auto hi = a.hi();
        std::vector<std::vector<Point>> parts(static_cast<std::size_t>(colors_));
        auto emit = [&](long n0, long n1) {
            Point p = Point::zero(dim_);
            for (int i = 0; i < dim_; ++i) {
                const auto k = static_cast<std::size_t>(i);
                double v = origin_[k] + static_cast<double>(n0) * basis_[0][k];
                if (dim_ == 2)
                    v += static_cast<double>(n1) * basis_[1][k];
                p.x[k] = Coord(v);
            }
            if (a.contains(p)) {
                const long c = ((n0 + n1) % colors_ + colors_) % colors_;
                parts[static_cast<std::size_t>(c)].push_back(p);
            }
        };
        if (dim_ == 1) {
            const double v = basis_[0][0];
            double t0 = (lo[0] - origin_[0]) / v;
            double t1 = (hi[0] - origin_[0]) / v;
            if (t0 > t1)
                std::swap(t0, t1);
            for (long n = static_cast<long>(std::floor(t0)) - 1; n <= static_cast<long>(std::ceil(t1)) + 1; ++n)
                emit(n, 0);
        } else {
            // lattice coordinates of the bounding-box corners
            double nmin[2] = {1e300, 1e300};
            double nmax[2] = {-1e300, -1e300};
            for (int c = 0; c < 4; ++c) {
                const double x = ((c & 1) ? hi[0] : lo[0]) - origin_[0];
                const double y = ((c & 2) ? hi[1] : lo[1]) - origin_[1];
                // solve n0*b0 + n1*b1 = (x, y)
                const double n0 = (x * basis_[1][1] - y * basis_[1][0]) / det_;
                const double n1 = (basis_[0][0] * y - basis_[0][1] * x) / det_;
                nmin[0] = std::min(nmin[0], n0);
                nmax[0] = std::max(nmax[0], n0);
                nmin[1] = std::min(nmin[1], n1);
                nmax[1] = std::max(nmax[1], n1);
            }
            for (long n0 = static_cast<long>(std::floor(nmin[0])) - 1; n0 <= static_cast<long>(std::ceil(nmax[0])) + 1; ++n0)
                for (long n1 = static_cast<long>(std::floor(nmin[1])) - 1; n1 <= static_cast<long>(std::ceil(nmax[1])) + 1; ++n1)
                    emit(n0, n1);
        }
        return {a, Cluster::from_parts(std::move(parts), dim_)};
    }

private:
    std::vector<std::vector<double>> basis_;
    std::vector<double> origin_;
    int colors_ = 1;
    int dim_ = 1;
    double det_ = 1.0;
};

// ---------------------------------------------------------------------------
// cut and project

class CutProjectSource final : public PointSource {
public:
    explicit CutProjectSource(const CutProjectSpec& spec) : spec_(spec)
    {
        const int c = compare(spec_.window_lo, spec_.window_hi, 0.0);
        if (c > 0 || (c == 0 && !(spec_.lo_closed && spec_.hi_closed)))
            throw std::invalid_argument("cut_project_source: empty window");
        if (!std::isfinite(spec_.window_lo.value()) || !std::isfinite(spec_.window_hi.value()))
            throw std::invalid_argument("cut_project_source: unbounded window");
    }

    std::string name() const override { return "cut_project"; }
    int dim() const override { return 1; }
    int colors() const override { return 1; }
    bool exact() const override { return true; }

    bool in_window(const QuadInt& q) const
    {
        const Coord y(q.conj());
        const int l = compare(y, spec_.window_lo, 0.0);
        const int h = compare(y, spec_.window_hi, 0.0);
        const bool above = spec_.lo_closed ? l >= 0 : l > 0;
        const bool below = spec_.hi_closed ? h <= 0 : h < 0;
        return above && below;
    }

    MultiSetPatch window(const Region& a) const override
    {
        if (a.dim() != 1)
            throw std::invalid_argument("cut_project_source: 1D only");
        const double off = spec_.offset.value();
        const double lo = a.lo()[0] - off - 1e-6;
        const double hi = a.hi()[0] - off + 1e-6;
        const double wlo = spec_.window_lo.value() - 1e-6;
        const double whi = spec_.window_hi.value() + 1e-6;
        const double tau_c = 1.0 - kTau;
        std::vector<Point> pts;
        // x - x' = b sqrt5
        const auto bmin = static_cast<std::int64_t>(std::floor((lo - whi) / kSqrt5)) - 1;
        const auto bmax = static_cast<std::int64_t>(std::ceil((hi - wlo) / kSqrt5)) + 1;
        for (std::int64_t b = bmin; b <= bmax; ++b) {
            const double bd = static_cast<double>(b);
            const double alo = std::max(lo - bd * kTau, wlo - bd * tau_c);
            const double ahi = std::min(hi - bd * kTau, whi - bd * tau_c);
            if (alo > ahi)
                continue;
            for (auto aa = static_cast<std::int64_t>(std::floor(alo)); aa <= static_cast<std::int64_t>(std::ceil(ahi)); ++aa) {
                const QuadInt q{aa, b};
                if (!in_window(q))
                    continue;
                const Point p(q + spec_.offset);
                if (a.contains(p))
                    pts.push_back(p);
            }
        }
        return {a, Cluster::from_parts({std::move(pts)}, 1)};
    }

private:
    CutProjectSpec spec_;
};

// ---------------------------------------------------------------------------
// substitution

Coord multiply(const Coord& x, const Coord& y)
{
    if (x.is_exact() && y.is_exact())
        return Coord(x.exact_value() * y.exact_value());
    return Coord(x.value() * y.value());
}

bool contains_pair(const std::vector<int>& w, int l, int r)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == l && w[i + 1] == r)
            return true;
    return false;
}

class SubstitutionSource final : public PointSource {
public:
    SubstitutionSource(SubstitutionRule rule, int right, std::optional<int> left)
        : rule_(std::move(rule)), right_(right), left_(left)
    {
        const int n = static_cast<int>(rule_.letters());
        if (right_ < 0 || right_ >= n || (left_ && (*left_ < 0 || *left_ >= n)))
            throw std::invalid_argument("substitution_source: seed letter out of range");
        for (power_ = 1; power_ <= 2 * n + 2; ++power_) {
            const auto r = expand_word(rule_, {right_}, power_);
            bool ok = r.front() == right_;
            if (left_) {
                const auto l = expand_word(rule_, {*left_}, power_);
                ok = ok && l.back() == *left_;
            }
            if (ok)
                break;
        }
        if (power_ > 2 * n + 2)
            throw std::invalid_argument("substitution_source: illegal seed (no power of the rule fixes it)");
        if (left_) {
            bool legal = false;
            for (int c = 0; c < n && !legal; ++c) {
                std::vector<int> w{c};
                for (int k = 0; k < 10 && !legal && w.size() < 200000; ++k) {
                    w = expand_word(rule_, w, 1);
                    legal = contains_pair(w, *left_, right_);
                }
            }
            if (!legal)
                throw std::invalid_argument("substitution_source: seed pair is not a legal word");
        }
        right_word_ = {right_};
        if (left_)
            left_word_ = {*left_};
        exact_ = std::all_of(rule_.lengths.begin(), rule_.lengths.end(),
                             [](const Coord& c) { return c.is_exact(); });
        rebuild_right();
        rebuild_left();
    }

    std::string name() const override { return rule_.name; }
    int dim() const override { return 1; }
    int colors() const override { return rule_.colors; }
    bool exact() const override { return exact_; }

    MultiSetPatch window(const Region& a) const override
    {
        if (a.dim() != 1)
            throw std::invalid_argument("substitution_source: 1D only");
        const double lo = a.lo()[0];
        const double hi = a.hi()[0];
        std::vector<std::vector<Point>> parts(static_cast<std::size_t>(rule_.colors));
        std::lock_guard lock(mu_);
        while (right_extent_ < hi + 1.0) {
            right_word_ = expand_word(rule_, right_word_, power_);
            rebuild_right();
        }
        while (left_ && left_extent_ > lo - 1.0) {
            left_word_ = expand_word(rule_, left_word_, power_);
            rebuild_left();
        }
        auto emit = [&](const Coord& pos, int letter) {
            const Point p(pos.is_exact() ? Point(pos.exact_value()) : Point(pos.value()));
            if (a.contains(p))
                parts[static_cast<std::size_t>(rule_.color[static_cast<std::size_t>(letter)])].push_back(p);
        };
        auto it = std::lower_bound(right_pos_.begin(), right_pos_.end(), lo - 1e-6,
                                   [](const Coord& c, double v) { return c.value() < v; });
        for (; it != right_pos_.end() && it->value() <= hi + 1e-6; ++it)
            emit(*it, right_word_[static_cast<std::size_t>(it - right_pos_.begin())]);
        if (left_) {
            // left_pos_ is decreasing
            auto jt = std::lower_bound(left_pos_.begin(), left_pos_.end(), hi + 1e-6,
                                       [](const Coord& c, double v) { return c.value() > v; });
            for (; jt != left_pos_.end() && jt->value() >= lo - 1e-6; ++jt) {
                const auto k = static_cast<std::size_t>(jt - left_pos_.begin());
                emit(*jt, left_word_[left_word_.size() - 1 - k]);
            }
        }
        return {a, Cluster::from_parts(std::move(parts), 1)};
    }

private:
    Coord zero() const { return exact_ ? Coord(QuadInt{}) : Coord(0.0); }

    void rebuild_right() const
    {
        right_pos_.clear();
        Coord pos = zero();
        for (int l : right_word_) {
            right_pos_.push_back(pos);
            pos = pos + rule_.lengths[static_cast<std::size_t>(l)];
        }
        right_extent_ = pos.value();
    }

    void rebuild_left() const
    {
        left_pos_.clear();
        Coord pos = zero();
        for (auto it = left_word_.rbegin(); it != left_word_.rend(); ++it) {
            pos = pos - rule_.lengths[static_cast<std::size_t>(*it)];
            left_pos_.push_back(pos);
        }
        left_extent_ = pos.value();
    }

    SubstitutionRule rule_;
    int right_;
    std::optional<int> left_;
    int power_ = 1;
    bool exact_ = false;

    mutable std::mutex mu_;
    mutable std::vector<int> right_word_;
    mutable std::vector<int> left_word_;
    mutable std::vector<Coord> right_pos_;
    mutable std::vector<Coord> left_pos_;
    mutable double right_extent_ = 0.0;
    mutable double left_extent_ = 0.0;
};

// ---------------------------------------------------------------------------
// Poisson

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class PoissonSource final : public PointSource {
public:
    PoissonSource(double intensity, std::uint64_t seed, int dim) : lambda_(intensity), seed_(seed), dim_(dim)
    {
        if (!(intensity > 0.0))
            throw std::invalid_argument("poisson_source: intensity must be positive");
        if (dim < 1 || dim > 2)
            throw std::invalid_argument("poisson_source: dimension must be 1 or 2");
    }

    std::string name() const override { return "poisson"; }
    int dim() const override { return dim_; }
    int colors() const override { return 1; }
    bool exact() const override { return false; }

    MultiSetPatch window(const Region& a) const override
    {
        const auto lo = a.lo();
        const auto hi = a.hi();
        std::vector<Point> pts;
        const auto i0 = static_cast<std::int64_t>(std::floor(lo[0]));
        const auto i1 = static_cast<std::int64_t>(std::floor(hi[0]));
        const auto j0 = dim_ == 2 ? static_cast<std::int64_t>(std::floor(lo[1])) : 0;
        const auto j1 = dim_ == 2 ? static_cast<std::int64_t>(std::floor(hi[1])) : 0;
        for (auto i = i0; i <= i1; ++i)
            for (auto j = j0; j <= j1; ++j) {
                std::uint64_t key = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(i)));
                if (dim_ == 2)
                    key = splitmix64(key ^ static_cast<std::uint64_t>(j) * 0x632be59bd9b4e019ull);
                std::mt19937_64 rng(key);
                std::poisson_distribution<int> count(lambda_);
                std::uniform_real_distribution<double> u(0.0, 1.0);
                const int n = count(rng);
                for (int k = 0; k < n; ++k) {
                    const double x = static_cast<double>(i) + u(rng);
                    Point p = dim_ == 1 ? Point(x) : Point(x, static_cast<double>(j) + u(rng));
                    if (a.contains(p))
                        pts.push_back(p);
                }
            }
        return {a, Cluster::from_parts({std::move(pts)}, dim_)};
    }

private:
    double lambda_;
    std::uint64_t seed_;
    int dim_;
};

} // namespace

// ---------------------------------------------------------------------------

SourcePtr lattice_source(std::vector<std::vector<double>> basis, int colors, std::vector<double> origin)
{
    return std::make_shared<LatticeSource>(std::move(basis), colors, std::move(origin));
}

CutProjectSpec CutProjectSpec::fibonacci()
{
    return CutProjectSpec{};
}

SourcePtr cut_project_source(const CutProjectSpec& spec)
{
    return std::make_shared<CutProjectSource>(spec);
}

SubstitutionRule SubstitutionRule::fibonacci()
{
    SubstitutionRule r;
    r.name = "fibonacci";
    r.expansion = {{0, 1}, {0}};
    r.lengths = {Coord(QuadInt::tau()), Coord(QuadInt{1, 0})};
    r.inflation = Coord(QuadInt::tau());
    r.color = {0, 0};
    r.colors = 1;
    return r;
}

SubstitutionRule SubstitutionRule::thue_morse()
{
    SubstitutionRule r;
    r.name = "thue_morse";
    r.expansion = {{0, 1}, {1, 0}};
    r.lengths = {Coord(QuadInt{1, 0}), Coord(QuadInt{1, 0})};
    r.inflation = Coord(QuadInt{2, 0});
    r.color = {0, 1};
    r.colors = 2;
    return r;
}

SubstitutionRule SubstitutionRule::period_doubling()
{
    SubstitutionRule r;
    r.name = "period_doubling";
    r.expansion = {{0, 1}, {0, 0}};
    r.lengths = {Coord(QuadInt{1, 0}), Coord(QuadInt{1, 0})};
    r.inflation = Coord(QuadInt{2, 0});
    r.color = {0, 1};
    r.colors = 2;
    return r;
}

std::vector<std::vector<std::int64_t>> substitution_matrix(const SubstitutionRule& rule)
{
    const std::size_t n = rule.letters();
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (int l : rule.expansion[j])
            ++m[static_cast<std::size_t>(l)][j];
    return m;
}

bool is_primitive(const SubstitutionRule& rule)
{
    const std::size_t n = rule.letters();
    const auto m = substitution_matrix(rule);
    std::vector<std::vector<bool>> pos(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            pos[i][j] = m[i][j] > 0;
    auto p = pos;
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool all = true;
        for (const auto& row : p)
            for (bool b : row)
                all = all && b;
        if (all)
            return true;
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n && !next[i][j]; ++l)
                    next[i][j] = p[i][l] && pos[l][j];
        p = std::move(next);
    }
    return false;
}

std::vector<int> expand_word(const SubstitutionRule& rule, std::vector<int> word, int times)
{
    for (int t = 0; t < times; ++t) {
        std::vector<int> next;
        for (int l : word) {
            const auto& e = rule.expansion[static_cast<std::size_t>(l)];
            next.insert(next.end(), e.begin(), e.end());
        }
        word = std::move(next);
    }
    return word;
}

SourcePtr substitution_source(const SubstitutionRule& rule, int right_seed, std::optional<int> left_seed)
{
    const std::size_t n = rule.letters();
    if (n == 0 || rule.lengths.size() != n || rule.color.size() != n)
        throw std::invalid_argument("substitution rule: inconsistent alphabet sizes");
    for (const auto& e : rule.expansion) {
        if (e.empty())
            throw std::invalid_argument("substitution rule: empty expansion");
        for (int l : e)
            if (l < 0 || static_cast<std::size_t>(l) >= n)
                throw std::invalid_argument("substitution rule: unknown letter in expansion");
    }
    for (std::size_t l = 0; l < n; ++l) {
        if (!(rule.lengths[l].value() > 0.0))
            throw std::invalid_argument("substitution rule: tile lengths must be positive");
        if (rule.color[l] < 0 || rule.color[l] >= rule.colors)
            throw std::invalid_argument("substitution rule: color out of range");
    }
    if (!is_primitive(rule))
        throw std::invalid_argument("substitution rule: substitution matrix is not primitive");
    for (std::size_t l = 0; l < n; ++l) {
        Coord sum = rule.lengths[static_cast<std::size_t>(rule.expansion[l][0])];
        for (std::size_t k = 1; k < rule.expansion[l].size(); ++k)
            sum = sum + rule.lengths[static_cast<std::size_t>(rule.expansion[l][k])];
        const Coord lhs = multiply(rule.lengths[l], rule.inflation);
        const double tol = 1e-9 * std::max(1.0, std::abs(sum.value()));
        if (compare(lhs, sum, tol) != 0)
            throw std::invalid_argument("substitution rule: tile lengths are not an eigenvector");
    }
    return std::make_shared<SubstitutionSource>(rule, right_seed, left_seed);
}

SourcePtr fibonacci_source()
{
    return substitution_source(SubstitutionRule::fibonacci(), 0, 1);
}

SourcePtr thue_morse_source()
{
    return substitution_source(SubstitutionRule::thue_morse(), 0, 0);
}

SourcePtr poisson_source(double intensity, std::uint64_t seed, int dim)
{
    return std::make_shared<PoissonSource>(intensity, seed, dim);
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

Coord coord_from_json(const json& j)
{
    if (j.is_array()) {
        if (j.size() != 2)
            throw std::invalid_argument("exact coordinate must be an integer pair [a, b]");
        return Coord(QuadInt{j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()});
    }
    if (j.is_number())
        return Coord(j.get<double>());
    throw std::invalid_argument("coordinate must be a number or an integer pair");
}

int letter_index(const std::string& s, const std::vector<std::string>& letters)
{
    auto it = std::find(letters.begin(), letters.end(), s);
    if (it == letters.end())
        throw std::invalid_argument("unknown substitution letter '" + s + "'");
    return static_cast<int>(it - letters.begin());
}

SourcePtr substitution_from_json(const json& spec)
{
    const json& rules = spec.at("rules");
    if (!rules.is_object() || rules.empty())
        throw std::invalid_argument("substitution: 'rules' must be a non-empty object");
    std::vector<std::string> letters;
    for (auto it = rules.begin(); it != rules.end(); ++it) {
        if (it.key().size() != 1)
            throw std::invalid_argument("substitution: letters are single characters");
        letters.push_back(it.key());
    }
    SubstitutionRule rule;
    rule.name = spec.value("name", std::string("substitution"));
    for (const auto& l : letters) {
        std::vector<int> e;
        for (char c : rules.at(l).get<std::string>())
            e.push_back(letter_index(std::string(1, c), letters));
        rule.expansion.push_back(std::move(e));
        rule.lengths.push_back(spec.contains("lengths") ? coord_from_json(spec.at("lengths").at(l)) : Coord(QuadInt{1, 0}));
        rule.color.push_back(spec.contains("colors") ? spec.at("colors").at(l).get<int>()
                                                     : static_cast<int>(rule.color.size()));
    }
    rule.colors = *std::max_element(rule.color.begin(), rule.color.end()) + 1;
    if (!spec.contains("inflation"))
        throw std::invalid_argument("substitution: 'inflation' is required");
    rule.inflation = coord_from_json(spec.at("inflation"));
    const int seed = letter_index(spec.at("seed").get<std::string>(), letters);
    std::optional<int> left;
    if (spec.contains("left_seed"))
        left = letter_index(spec.at("left_seed").get<std::string>(), letters);
    return substitution_source(rule, seed, left);
}

} // namespace

SourcePtr source_from_json(const json& spec)
{
    try {
        if (!spec.is_object() || !spec.contains("type"))
            throw std::invalid_argument("source spec needs a 'type'");
        const std::string type = spec.at("type").get<std::string>();
        const bool one_sided = spec.value("one_sided", false);
        if (type == "fibonacci") {
            if (spec.value("method", std::string("substitution")) == "cut_project")
                return cut_project_source(CutProjectSpec::fibonacci());
            return one_sided ? substitution_source(SubstitutionRule::fibonacci(), 0) : fibonacci_source();
        }
        if (type == "thue_morse")
            return one_sided ? substitution_source(SubstitutionRule::thue_morse(), 0) : thue_morse_source();
        if (type == "period_doubling")
            return substitution_source(SubstitutionRule::period_doubling(), 0, one_sided ? std::nullopt : std::optional<int>(0));
        if (type == "lattice") {
            std::vector<std::vector<double>> basis;
            if (spec.contains("basis"))
                basis = spec.at("basis").get<std::vector<std::vector<double>>>();
            else
                basis = {{spec.value("spacing", 1.0)}};
            std::vector<double> origin;
            if (spec.contains("origin"))
                origin = spec.at("origin").get<std::vector<double>>();
            return lattice_source(std::move(basis), spec.value("colors", 1), std::move(origin));
        }
        if (type == "cut_project") {
            CutProjectSpec cp;
            if (spec.contains("window")) {
                const auto& w = spec.at("window");
                if (!w.is_array() || w.size() != 2)
                    throw std::invalid_argument("cut_project: 'window' must be [lo, hi]");
                cp.window_lo = coord_from_json(w.at(0));
                cp.window_hi = coord_from_json(w.at(1));
            }
            const std::string closed = spec.value("closed", std::string("left"));
            cp.lo_closed = closed == "left" || closed == "both";
            cp.hi_closed = closed == "right" || closed == "both";
            if (spec.contains("offset")) {
                const Coord off = coord_from_json(spec.at("offset"));
                if (!off.is_exact())
                    throw std::invalid_argument("cut_project: offset must be an exact pair [a, b]");
                cp.offset = off.exact_value();
            }
            return cut_project_source(cp);
        }
        if (type == "substitution")
            return substitution_from_json(spec);
        if (type == "poisson")
            return poisson_source(spec.value("intensity", 1.0), spec.value("seed", std::uint64_t{1}),
                                  spec.value("dim", 1));
        throw std::invalid_argument("unknown source type '" + type + "'");
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed source spec: ") + e.what());
    }
}

} // namespace ppspec
