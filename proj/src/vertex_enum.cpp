#include "flowgame/lpexact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace flowgame {

namespace {

class Bitset
{
  public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    Bitset operator&(const Bitset& other) const
    {
        Bitset out;
        out.words_.resize(words_.size());
        for (std::size_t w = 0; w < words_.size(); ++w) {
            out.words_[w] = words_[w] & other.words_[w];
        }
        return out;
    }

    bool subset_of(const Bitset& other) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if ((words_[w] & ~other.words_[w]) != 0) {
                return false;
            }
        }
        return true;
    }

    std::size_t count() const
    {
        std::size_t total = 0;
        for (auto w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }

  private:
    std::vector<std::uint64_t> words_;
};

struct Ray
{
    std::vector<Rational> z;  // (x0, x)
    Bitset tight;
};

void normalize(std::vector<Rational>& z)
{
    auto lead = std::find_if(z.begin(), z.end(), [](const Rational& v) { return sgn(v) != 0; });
    if (lead == z.end()) {
        return;
    }
    Rational scale = abs(*lead);
    for (auto& v : z) {
        v /= scale;
    }
}

}  // namespace

VertexEnumeration enumerate_vertices(const ConstraintPool& pool)
{
    const std::size_t n = pool.variable_count();
    const std::size_t dim = n + 1;

    // Homogenized halfspaces h.z <= 0 with z = (x0, x); equalities first.
    std::vector<std::vector<Rational>> halfspaces;
    auto push = [&](const Row& row, int sign) {
        std::vector<Rational> h(dim);
        h[0] = -sign * row.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            h[j + 1] = sign * row.coeffs[j];
        }
        halfspaces.push_back(std::move(h));
    };
    for (const Row& row : pool.rows()) {
        if (row.sense == Sense::Equal) {
            push(row, 1);
            push(row, -1);
        }
    }
    for (const Row& row : pool.rows()) {
        if (row.sense == Sense::LessEqual) {
            push(row, 1);
        } else if (row.sense == Sense::GreaterEqual) {
            push(row, -1);
        }
    }

    // Start from the nonnegative orthant; constraint i < dim is -z_i <= 0.
    const std::size_t total = dim + halfspaces.size();
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < dim; ++i) {
        Ray ray{std::vector<Rational>(dim), Bitset(total)};
        ray.z[i] = 1;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j != i) {
                ray.tight.set(j);
            }
        }
        rays.push_back(std::move(ray));
    }

    for (std::size_t h = 0; h < halfspaces.size(); ++h) {
        const auto& a = halfspaces[h];
        const std::size_t id = dim + h;
        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> plus;
        std::vector<std::size_t> minus;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            Rational v = 0;
            for (std::size_t j = 0; j < dim; ++j) {
                if (sgn(a[j]) != 0 && sgn(rays[r].z[j]) != 0) {
                    v += a[j] * rays[r].z[j];
                }
            }
            if (sgn(v) > 0) {
                plus.push_back(r);
            } else if (sgn(v) < 0) {
                minus.push_back(r);
            } else {
                rays[r].tight.set(id);
            }
            value[r] = std::move(v);
        }
        if (plus.empty()) {
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sgn(value[r]) <= 0) {
                next.push_back(rays[r]);
            }
        }
        for (std::size_t p : plus) {
            for (std::size_t q : minus) {
                Bitset common = rays[p].tight & rays[q].tight;
                if (common.count() + 2 < dim) {
                    continue;
                }
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r != p && r != q && common.subset_of(rays[r].tight)) {
                        adjacent = false;
                    }
                }
                if (!adjacent) {
                    continue;
                }
                Ray ray{std::vector<Rational>(dim), common};
                for (std::size_t j = 0; j < dim; ++j) {
                    ray.z[j] = value[p] * rays[q].z[j] - value[q] * rays[p].z[j];
                }
                normalize(ray.z);
                ray.tight.set(id);
                next.push_back(std::move(ray));
            }
        }
        rays = std::move(next);
    }

    VertexEnumeration result;
    for (const auto& ray : rays) {
        if (sgn(ray.z[0]) == 0) {
            result.bounded = false;
            continue;
        }
        std::vector<Rational> x(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = ray.z[j + 1] / ray.z[0];
        }
        result.vertices.push_back(std::move(x));
    }
    std::sort(result.vertices.begin(), result.vertices.end());
    result.vertices.erase(std::unique(result.vertices.begin(), result.vertices.end()), result.vertices.end());
    return result;
}

}  // namespace flowgame
