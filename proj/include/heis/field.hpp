#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fd.hpp"
#include "point.hpp"

namespace heis {

/// First-order frame jet: (Xf, Yf, Tf).
struct Jet1 {
    double X = 0.0, Y = 0.0, T = 0.0;
};

/// Second-order frame jet: (X²f, Y²f, XYf, YXf, T²f, XTf, YTf).
struct Jet2 {
    double XX = 0.0, YY = 0.0, XY = 0.0, YX = 0.0, TT = 0.0, XT = 0.0, YT = 0.0;
};

enum class JetSource { analytic, finite_difference };

struct FieldDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar field on H^1 with optional analytic frame jets and a finite-difference
/// fallback. Fields singular at an isolated point declare an exclusion radius;
/// evaluating inside it throws FieldDomainError.
class ScalarField {
  public:
    using Eval = std::function<double(const HeisPoint&)>;
    using Jet1Fn = std::function<Jet1(const HeisPoint&)>;
    using Jet2Fn = std::function<Jet2(const HeisPoint&)>;

    ScalarField() = default;

    static ScalarField from_eval(Eval e, FDConfig fd = {}) {
        ScalarField f;
        f.eval_ = std::move(e);
        f.fd_ = fd;
        f.tag_ = JetSource::finite_difference;
        return f;
    }

    static ScalarField from_jets(Eval e, Jet1Fn j1, Jet2Fn j2, FDConfig fd = {}) {
        ScalarField f;
        f.eval_ = std::move(e);
        f.jet1_ = std::move(j1);
        f.jet2_ = std::move(j2);
        f.fd_ = fd;
        f.tag_ = JetSource::analytic;
        return f;
    }

    ScalarField& with_exclusion(const HeisPoint& center, double radius) {
        singular_center_ = center;
        exclusion_radius_ = radius;
        return *this;
    }

    JetSource jet_source() const { return tag_; }
    bool has_analytic_jet1() const { return static_cast<bool>(jet1_); }
    bool has_analytic_jet2() const { return static_cast<bool>(jet2_); }
    const FDConfig& fd_config() const { return fd_; }
    ScalarField& set_fd_config(FDConfig fd) { fd_ = fd; return *this; }

    bool defined_at(const HeisPoint& p, double margin = 0.0) const {
        if (!singular_center_) return true;
        return koranyi_dist(*singular_center_, p) > exclusion_radius_ + margin;
    }

    double operator()(const HeisPoint& p) const {
        guard(p, 0.0);
        return eval_(p);
    }

    Jet1 jet1(const HeisPoint& p) const {
        if (jet1_) {
            guard(p, 0.0);
            return jet1_(p);
        }
        guard(p, fd_margin(p));
        return fd_jet1(p);
    }

    Jet2 jet2(const HeisPoint& p) const {
        if (jet2_) {
            guard(p, 0.0);
            return jet2_(p);
        }
        guard(p, fd_margin(p));
        return fd_jet2(p);
    }

    /// Finite-difference jets regardless of analytic availability (used to
    /// cross-certify analytic jets).
    Jet1 fd_jet1(const HeisPoint& p) const {
        using namespace detail;
        const Eval& f = eval_;
        const double fx = partial1(f, p, Axis::X, fd_);
        const double fy = partial1(f, p, Axis::Y, fd_);
        const double ft = partial1(f, p, Axis::T, fd_);
        return assemble_jet1(p, fx, fy, ft);
    }

    Jet2 fd_jet2(const HeisPoint& p) const {
        using namespace detail;
        const Eval& f = eval_;
        const double ft = partial1(f, p, Axis::T, fd_);
        const double fxx = partial2(f, p, Axis::X, fd_);
        const double fyy = partial2(f, p, Axis::Y, fd_);
        const double ftt = partial2(f, p, Axis::T, fd_);
        const double fxy = partial_mixed(f, p, Axis::X, Axis::Y, fd_);
        const double fxt = partial_mixed(f, p, Axis::X, Axis::T, fd_);
        const double fyt = partial_mixed(f, p, Axis::Y, Axis::T, fd_);
        return assemble_jet2(p, ft, fxx, fyy, ftt, fxy, fxt, fyt);
    }

    /// Frame jets from coordinate partials: X = ∂x + 2y ∂t, Y = ∂y − 2x ∂t.
    static Jet1 assemble_jet1(const HeisPoint& p, double fx, double fy, double ft) {
        const double x = p.x(), y = p.y();
        return {fx + 2.0 * y * ft, fy - 2.0 * x * ft, ft};
    }

    static Jet2 assemble_jet2(const HeisPoint& p, double ft, double fxx, double fyy, double ftt,
                              double fxy, double fxt, double fyt) {
        const double x = p.x(), y = p.y();
        Jet2 j;
        j.XX = fxx + 4.0 * y * fxt + 4.0 * y * y * ftt;
        j.YY = fyy - 4.0 * x * fyt + 4.0 * x * x * ftt;
        j.XY = fxy - 2.0 * ft - 2.0 * x * fxt + 2.0 * y * fyt - 4.0 * x * y * ftt;
        j.YX = fxy + 2.0 * ft - 2.0 * x * fxt + 2.0 * y * fyt - 4.0 * x * y * ftt;
        j.TT = ftt;
        j.XT = fxt + 2.0 * y * ftt;
        j.YT = fyt - 2.0 * x * ftt;
        return j;
    }

  private:
    void guard(const HeisPoint& p, double margin) const {
        if (!p.finite()) throw FieldDomainError("ScalarField: non-finite evaluation point");
        if (!defined_at(p, margin))
            throw FieldDomainError("ScalarField: point inside exclusion radius");
    }

    double fd_margin(const HeisPoint& p) const {
        const double s = std::max(1.0, koranyi_norm(p));
        return 8.0 * fd_.base_step * s;
    }

    Eval eval_;
    Jet1Fn jet1_;
    Jet2Fn jet2_;
    FDConfig fd_;
    JetSource tag_ = JetSource::finite_difference;
    std::optional<HeisPoint> singular_center_;
    double exclusion_radius_ = 0.0;

    friend ScalarField compose_dilate(const ScalarField&, double);
    friend ScalarField compose_translate(const ScalarField&, const HeisPoint&);
    friend ScalarField operator*(const ScalarField&, const ScalarField&);
    friend ScalarField lin_comb(double, const ScalarField&, double, const ScalarField&);
    friend ScalarField add_const(const ScalarField&, double);
    friend ScalarField scale_values(const ScalarField&, double);
    friend ScalarField apply_smooth(const ScalarField&, std::function<double(double)>,
                                    std::function<double(double)>, std::function<double(double)>);
};

/// f ∘ δ_λ with chain-rule jets: X(f∘δ)=λ(Xf)∘δ, T(f∘δ)=λ²(Tf)∘δ, etc.
inline ScalarField compose_dilate(const ScalarField& f, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("compose_dilate: lambda must be positive");
    auto base = std::make_shared<ScalarField>(f);
    ScalarField out;
    out.fd_ = f.fd_;
    out.tag_ = f.tag_;
    out.eval_ = [base, lambda](const HeisPoint& p) { return (*base)(dilate(p, lambda)); };
    if (f.jet1_) {
        out.jet1_ = [base, lambda](const HeisPoint& p) {
            Jet1 j = base->jet1(dilate(p, lambda));
            return Jet1{lambda * j.X, lambda * j.Y, lambda * lambda * j.T};
        };
    }
    if (f.jet2_) {
        out.jet2_ = [base, lambda](const HeisPoint& p) {
            Jet2 j = base->jet2(dilate(p, lambda));
            const double l2 = lambda * lambda, l3 = l2 * lambda, l4 = l2 * l2;
            return Jet2{l2 * j.XX, l2 * j.YY, l2 * j.XY, l2 * j.YX, l4 * j.TT, l3 * j.XT, l3 * j.YT};
        };
    }
    if (f.singular_center_) {
        out.singular_center_ = dilate(*f.singular_center_, 1.0 / lambda);
        out.exclusion_radius_ = f.exclusion_radius_ / lambda;
    }
    return out;
}

/// f ∘ L_{x0} with jets carried along (the frame is left invariant).
inline ScalarField compose_translate(const ScalarField& f, const HeisPoint& x0) {
    auto base = std::make_shared<ScalarField>(f);
    ScalarField out;
    out.fd_ = f.fd_;
    out.tag_ = f.tag_;
    out.eval_ = [base, x0](const HeisPoint& p) { return (*base)(left_translate(x0, p)); };
    if (f.jet1_)
        out.jet1_ = [base, x0](const HeisPoint& p) { return base->jet1(left_translate(x0, p)); };
    if (f.jet2_)
        out.jet2_ = [base, x0](const HeisPoint& p) { return base->jet2(left_translate(x0, p)); };
    if (f.singular_center_) {
        out.singular_center_ = group_mul(x0, *f.singular_center_);
        out.exclusion_radius_ = f.exclusion_radius_;
    }
    return out;
}

inline ScalarField lin_comb(double a, const ScalarField& f, double b, const ScalarField& g) {
    auto pf = std::make_shared<ScalarField>(f);
    auto pg = std::make_shared<ScalarField>(g);
    ScalarField out;
    out.fd_ = f.fd_;
    out.tag_ = (f.tag_ == JetSource::analytic && g.tag_ == JetSource::analytic)
                   ? JetSource::analytic
                   : JetSource::finite_difference;
    out.eval_ = [pf, pg, a, b](const HeisPoint& p) { return a * (*pf)(p) + b * (*pg)(p); };
    if (f.jet1_ && g.jet1_) {
        out.jet1_ = [pf, pg, a, b](const HeisPoint& p) {
            Jet1 u = pf->jet1(p), v = pg->jet1(p);
            return Jet1{a * u.X + b * v.X, a * u.Y + b * v.Y, a * u.T + b * v.T};
        };
    }
    if (f.jet2_ && g.jet2_) {
        out.jet2_ = [pf, pg, a, b](const HeisPoint& p) {
            Jet2 u = pf->jet2(p), v = pg->jet2(p);
            return Jet2{a * u.XX + b * v.XX, a * u.YY + b * v.YY, a * u.XY + b * v.XY,
                        a * u.YX + b * v.YX, a * u.TT + b * v.TT, a * u.XT + b * v.XT,
                        a * u.YT + b * v.YT};
        };
    }
    if (f.singular_center_) {
        out.singular_center_ = f.singular_center_;
        out.exclusion_radius_ = f.exclusion_radius_;
    } else if (g.singular_center_) {
        out.singular_center_ = g.singular_center_;
        out.exclusion_radius_ = g.exclusion_radius_;
    }
    return out;
}

inline ScalarField operator+(const ScalarField& f, const ScalarField& g) {
    return lin_comb(1.0, f, 1.0, g);
}

inline ScalarField add_const(const ScalarField& f, double c) {
    auto pf = std::make_shared<ScalarField>(f);
    ScalarField out = f;
    out.eval_ = [pf, c](const HeisPoint& p) { return (*pf)(p) + c; };
    return out;
}

inline ScalarField scale_values(const ScalarField& f, double c) {
    auto pf = std::make_shared<ScalarField>(f);
    ScalarField out;
    out.fd_ = f.fd_;
    out.tag_ = f.tag_;
    out.eval_ = [pf, c](const HeisPoint& p) { return c * (*pf)(p); };
    if (f.jet1_)
        out.jet1_ = [pf, c](const HeisPoint& p) {
            Jet1 j = pf->jet1(p);
            return Jet1{c * j.X, c * j.Y, c * j.T};
        };
    if (f.jet2_)
        out.jet2_ = [pf, c](const HeisPoint& p) {
            Jet2 j = pf->jet2(p);
            return Jet2{c * j.XX, c * j.YY, c * j.XY, c * j.YX, c * j.TT, c * j.XT, c * j.YT};
        };
    out.singular_center_ = f.singular_center_;
    out.exclusion_radius_ = f.exclusion_radius_;
    return out;
}

/// Pointwise product with Leibniz jets.
inline ScalarField operator*(const ScalarField& f, const ScalarField& g) {
    auto pf = std::make_shared<ScalarField>(f);
    auto pg = std::make_shared<ScalarField>(g);
    ScalarField out;
    out.fd_ = f.fd_;
    out.tag_ = (f.tag_ == JetSource::analytic && g.tag_ == JetSource::analytic)
                   ? JetSource::analytic
                   : JetSource::finite_difference;
    out.eval_ = [pf, pg](const HeisPoint& p) { return (*pf)(p) * (*pg)(p); };
    if (f.jet1_ && g.jet1_) {
        out.jet1_ = [pf, pg](const HeisPoint& p) {
            const double u = (*pf)(p), v = (*pg)(p);
            Jet1 ju = pf->jet1(p), jv = pg->jet1(p);
            return Jet1{ju.X * v + u * jv.X, ju.Y * v + u * jv.Y, ju.T * v + u * jv.T};
        };
    }
    if (f.jet2_ && g.jet2_) {
        out.jet2_ = [pf, pg](const HeisPoint& p) {
            const double u = (*pf)(p), v = (*pg)(p);
            Jet1 a = pf->jet1(p), b = pg->jet1(p);
            Jet2 A = pf->jet2(p), B = pg->jet2(p);
            Jet2 j;
            j.XX = A.XX * v + 2.0 * a.X * b.X + u * B.XX;
            j.YY = A.YY * v + 2.0 * a.Y * b.Y + u * B.YY;
            j.XY = A.XY * v + a.X * b.Y + a.Y * b.X + u * B.XY;
            j.YX = A.YX * v + a.Y * b.X + a.X * b.Y + u * B.YX;
            j.TT = A.TT * v + 2.0 * a.T * b.T + u * B.TT;
            j.XT = A.XT * v + a.X * b.T + a.T * b.X + u * B.XT;
            j.YT = A.YT * v + a.Y * b.T + a.T * b.Y + u * B.YT;
            return j;
        };
    }
    if (f.singular_center_) {
        out.singular_center_ = f.singular_center_;
        out.exclusion_radius_ = f.exclusion_radius_;
    } else if (g.singular_center_) {
        out.singular_center_ = g.singular_center_;
        out.exclusion_radius_ = g.exclusion_radius_;
    }
    return out;
}

/// G ∘ f for smooth scalar G with chain-rule jets.
inline ScalarField apply_smooth(const ScalarField& f, std::function<double(double)> G,
                                std::function<double(double)> G1,
                                std::function<double(double)> G2) {
    auto pf = std::make_shared<ScalarField>(f);
    auto g0 = std::make_shared<std::function<double(double)>>(std::move(G));
    auto g1 = std::make_shared<std::function<double(double)>>(std::move(G1));
    auto g2 = std::make_shared<std::function<double(double)>>(std::move(G2));
    ScalarField out;
    out.fd_ = f.fd_;
    out.tag_ = f.tag_;
    out.eval_ = [pf, g0](const HeisPoint& p) { return (*g0)((*pf)(p)); };
    if (f.jet1_) {
        out.jet1_ = [pf, g1](const HeisPoint& p) {
            const double d1 = (*g1)((*pf)(p));
            Jet1 j = pf->jet1(p);
            return Jet1{d1 * j.X, d1 * j.Y, d1 * j.T};
        };
    }
    if (f.jet2_) {
        out.jet2_ = [pf, g1, g2](const HeisPoint& p) {
            const double u = (*pf)(p);
            const double d1 = (*g1)(u), d2 = (*g2)(u);
            Jet1 a = pf->jet1(p);
            Jet2 A = pf->jet2(p);
            Jet2 j;
            j.XX = d2 * a.X * a.X + d1 * A.XX;
            j.YY = d2 * a.Y * a.Y + d1 * A.YY;
            j.XY = d2 * a.X * a.Y + d1 * A.XY;
            j.YX = d2 * a.Y * a.X + d1 * A.YX;
            j.TT = d2 * a.T * a.T + d1 * A.TT;
            j.XT = d2 * a.X * a.T + d1 * A.XT;
            j.YT = d2 * a.Y * a.T + d1 * A.YT;
            return j;
        };
    }
    out.singular_center_ = f.singular_center_;
    out.exclusion_radius_ = f.exclusion_radius_;
    return out;
}

/// u^alpha for positive fields.
inline ScalarField pow_field(const ScalarField& f, double alpha) {
    return apply_smooth(
        f, [alpha](double s) { return std::pow(s, alpha); },
        [alpha](double s) { return alpha * std::pow(s, alpha - 1.0); },
        [alpha](double s) { return alpha * (alpha - 1.0) * std::pow(s, alpha - 2.0); });
}

inline ScalarField constant_field(double c) {
    return ScalarField::from_jets([c](const HeisPoint&) { return c; },
                                  [](const HeisPoint&) { return Jet1{}; },
                                  [](const HeisPoint&) { return Jet2{}; });
}

inline ScalarField coordinate_x() {
    return ScalarField::from_jets([](const HeisPoint& p) { return p.x(); },
                                  [](const HeisPoint&) { return Jet1{1.0, 0.0, 0.0}; },
                                  [](const HeisPoint&) { return Jet2{}; });
}

inline ScalarField coordinate_y() {
    return ScalarField::from_jets([](const HeisPoint& p) { return p.y(); },
                                  [](const HeisPoint&) { return Jet1{0.0, 1.0, 0.0}; },
                                  [](const HeisPoint&) { return Jet2{}; });
}

inline ScalarField coordinate_t() {
    // X t = 2y, Y t = −2x, [X,Y] t = −4.
    return ScalarField::from_jets(
        [](const HeisPoint& p) { return p.t; },
        [](const HeisPoint& p) { return Jet1{2.0 * p.y(), -2.0 * p.x(), 1.0}; },
        [](const HeisPoint&) {
            Jet2 j;
            j.XY = -2.0;
            j.YX = 2.0;
            return j;
        });
}

}  // namespace heis
