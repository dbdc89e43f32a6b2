#include "a2b/chart.hpp"

namespace a2b {

void Polygon::add(const Vec3& a, const Rational& b) {
    Vec3 ac = center(a);
    if (is_zero(ac)) {
        if (b < 0) hs.push_back({Vec3{0, 0, 0}, b});
        return;
    }
    hs.push_back({ac, b});
}

void Polygon::add_range(const Vec3& a, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (hi) add(a, *hi);
    if (lo) add(scale(Rational(-1), a), Rational(-*lo));
}

bool Polygon::contains(const Vec3& c) const {
    for (const auto& h : hs)
        if (dot(h.a, c) > h.b) return false;
    return true;
}

bool Polygon::interior(const Vec3& c) const {
    for (const auto& h : hs)
        if (dot(h.a, c) >= h.b) return false;
    return true;
}

Polygon Polygon::meet(const Polygon& o) const {
    Polygon r = *this;
    r.hs.insert(r.hs.end(), o.hs.begin(), o.hs.end());
    return r;
}

namespace {

std::optional<Vec3> intersect_lines(const HalfPlane& h1, const HalfPlane& h2) {
    Mat3 m;
    m[0] = h1.a;
    m[1] = h2.a;
    m[2] = Vec3{1, 1, 1};
    Rational d = det(m);
    if (d == 0) return std::nullopt;
    return mul(inverse(m), Vec3{h1.b, h2.b, 0});
}

}  // namespace

std::vector<Vec3> Polygon::vertices() const {
    std::vector<Vec3> out;
    for (size_t i = 0; i < hs.size(); ++i)
        for (size_t j = i + 1; j < hs.size(); ++j) {
            if (is_zero(hs[i].a) || is_zero(hs[j].a)) continue;
            auto v = intersect_lines(hs[i], hs[j]);
            if (!v || !contains(*v)) continue;
            bool dup = false;
            for (auto& w : out)
                if (w == *v) dup = true;
            if (!dup) out.push_back(*v);
        }
    return out;
}

std::optional<Nearest> nearest(const Polygon& poly, const Vec3& z0) {
    Vec3 z = center(z0);
    std::optional<Nearest> best;
    auto consider = [&](const Vec3& c) {
        if (!poly.contains(c)) return;
        Rational d2 = traceless_norm2(sub(c, z));
        if (!best || d2 < best->d2) best = Nearest{d2, c};
    };
    consider(z);
    if (best) return best;
    for (const auto& h : poly.hs) {
        if (is_zero(h.a)) continue;
        Rational t = (dot(h.a, z) - h.b) / dot(h.a, h.a);
        consider(sub(z, scale(t, h.a)));
    }
    for (const auto& v : poly.vertices()) consider(v);
    return best;
}

std::optional<Vec3> Polygon::some_point() const {
    auto n = nearest(*this, Vec3{0, 0, 0});
    if (!n) return std::nullopt;
    return n->c;
}

Alcoved Alcoved::whole() { return Alcoved{}; }

Alcoved Alcoved::empty_region() {
    Alcoved a;
    a.is_empty = true;
    return a;
}

void Alcoved::bound(int a, int b, const Rational& v) {
    if (!k[a][b] || v < *k[a][b]) k[a][b] = v;
}

void Alcoved::tighten() {
    if (is_empty) return;
    for (int m = 0; m < 3; ++m)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b || !k[a][m] || !k[m][b]) continue;
                bound(a, b, *k[a][m] + *k[m][b]);
            }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b || !k[a][b] || !k[b][a]) continue;
            if (*k[a][b] + *k[b][a] < 0) is_empty = true;
        }
    for (int a = 0; a < 3; ++a) k[a][a].reset();
}

Alcoved Alcoved::meet(const Alcoved& o) const {
    if (is_empty || o.is_empty) return empty_region();
    Alcoved r = *this;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (o.k[a][b]) r.bound(a, b, *o.k[a][b]);
    r.tighten();
    return r;
}

Alcoved Alcoved::hull(const Alcoved& o) const {
    if (is_empty) return o;
    if (o.is_empty) return *this;
    Alcoved r;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (k[a][b] && o.k[a][b]) r.k[a][b] = *k[a][b] > *o.k[a][b] ? *k[a][b] : *o.k[a][b];
    return r;
}

bool Alcoved::contains(const Vec3& c) const {
    if (is_empty) return false;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (k[a][b] && c[a] - c[b] > *k[a][b]) return false;
    return true;
}

bool Alcoved::interior(const Vec3& c) const {
    if (is_empty) return false;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (k[a][b] && c[a] - c[b] >= *k[a][b]) return false;
    return true;
}

Polygon Alcoved::polygon() const {
    Polygon p;
    if (is_empty) {
        p.hs.push_back({Vec3{0, 0, 0}, Rational(-1)});
        return p;
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (!k[a][b]) continue;
            Vec3 v{0, 0, 0};
            v[a] = 1;
            v[b] = -1;
            p.add(v, *k[a][b]);
        }
    return p;
}

std::optional<Vec3> Alcoved::some_point() const {
    if (is_empty) return std::nullopt;
    return polygon().some_point();
}

Rational random_rational(std::mt19937_64& rng, int lo, int hi, int den) {
    std::uniform_int_distribution<long> u(long(lo) * den, long(hi) * den);
    return ratio(u(rng), den);
}

std::optional<Vec3> sample_alcoved(const Alcoved& r, std::mt19937_64& rng, int radius, int den) {
    auto base = r.some_point();
    if (!base) return std::nullopt;
    auto verts = r.polygon().vertices();
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            if (!r.k[a][b] || !r.k[b][a] || *r.k[a][b] != -*r.k[b][a]) continue;
            Vec3 d{1, 1, 1};
            d[3 - a - b] = -2;
            for (int tries = 0; tries < 64; ++tries) {
                Vec3 c = add(*base, scale(random_rational(rng, -radius, radius, den), d));
                if (r.contains(c)) return c;
            }
            return base;
        }
    for (int tries = 0; tries < 64; ++tries) {
        Vec3 c = *base;
        if (!verts.empty() && tries % 2 == 0) {
            std::uniform_int_distribution<size_t> pick(0, verts.size() - 1);
            Rational t = random_rational(rng, 0, 1, den);
            c = add(scale(1 - t, c), scale(t, verts[pick(rng)]));
        }
        for (int a = 0; a < 2; ++a) c[a] += random_rational(rng, -radius, radius, den);
        if (r.contains(c)) return c;
    }
    // degenerate regions: walk between the base point and vertices
    if (!verts.empty()) {
        std::uniform_int_distribution<size_t> pick(0, verts.size() - 1);
        Rational t = random_rational(rng, 0, 1, den);
        return add(scale(1 - t, *base), scale(t, verts[pick(rng)]));
    }
    return base;
}

}  // namespace a2b
