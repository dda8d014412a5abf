#include "sgqgan/quantum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace sgqgan {

namespace {

constexpr double kUnitaryTol = 1e-10;

Mat2 rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat2 r;
    r << c, -s, s, c;
    return r;
}

// Linear retarder with retardance `phase` and fast axis at `theta` from H.
Mat2 retarder(double theta, double phase) {
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::polar(1.0, -phase / 2);
    d(1, 1) = std::polar(1.0, phase / 2);
    return rotation(theta) * d * rotation(-theta);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(ErrorKind::ParseError, fmt::format("bad complex literal '{}'", whole));
    }
    return value;
}

}  // namespace

PureState PureState::basis(std::size_t d, std::size_t index) {
    if (d < 2 || index >= d) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("basis state {} invalid in dimension {}", index, d));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(v));
}

PureState normalize(const UnnormalizedVector& v, Gauge gauge) {
    if (v.amps.size() < 2) {
        throw Error(ErrorKind::DimensionMismatch, "states need dimension >= 2");
    }
    const double n = v.amps.norm();
    if (!(n > kZeroNormTol)) {
        throw Error(ErrorKind::ZeroVector, fmt::format("cannot normalize vector of norm {}", n));
    }
    CVector amps = v.amps / n;
    if (gauge == Gauge::Canonical) {
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            if (std::abs(amps[i]) > kZeroNormTol) {
                amps *= std::conj(amps[i]) / std::abs(amps[i]);
                amps[i] = std::abs(amps[i]);
                break;
            }
        }
    }
    return PureState(std::move(amps));
}

PureState normalize(std::initializer_list<cplx> amps, Gauge gauge) {
    CVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (const auto& a : amps) v[i++] = a;
    return normalize(UnnormalizedVector{std::move(v)}, gauge);
}

PureState canonicalize(const PureState& s) {
    return normalize(UnnormalizedVector{s.amps()}, Gauge::Canonical);
}

double overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("overlap of states with dimensions {} and {}", a.dim(), b.dim()));
    }
    return std::clamp(std::norm(a.amps().dot(b.amps())), 0.0, 1.0);
}

double root_fidelity(const PureState& a, const PureState& b) {
    return std::sqrt(overlap(a, b));
}

std::array<double, 3> bloch_coords(const PureState& s) {
    if (s.dim() != 2) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("Bloch coordinates need a qubit, got dimension {}", s.dim()));
    }
    const cplx coherence = std::conj(s[0]) * s[1];
    return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(s[0]) - std::norm(s[1])};
}

JonesUnitary::JonesUnitary(const Mat2& m) : m_(m) {
    const double dev = (m.adjoint() * m - Mat2::Identity()).cwiseAbs().maxCoeff();
    const double det = std::abs(m.determinant());
    if (!(dev <= kUnitaryTol) || !(std::abs(det - 1.0) <= kUnitaryTol)) {
        throw Error(ErrorKind::NotUnitary,
                    fmt::format("matrix is not unitary (|U^dag U - I| = {:.3g}, |det| = {})", dev, det));
    }
}

JonesUnitary hwp(double theta) { return JonesUnitary(retarder(theta, std::numbers::pi)); }

JonesUnitary qwp(double theta) { return JonesUnitary(retarder(theta, std::numbers::pi / 2)); }

PureState apply_unitary(const JonesUnitary& u, const PureState& s) {
    if (s.dim() != 2) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("2x2 unitary applied to dimension-{} state", s.dim()));
    }
    return normalize(UnnormalizedVector{u.matrix() * s.amps()});
}

PureState polarization(char label) {
    const double r = std::numbers::sqrt2 / 2;
    switch (label) {
        case 'H': return normalize({1.0, 0.0});
        case 'V': return normalize({0.0, 1.0});
        case 'D': return normalize({r, r});
        case 'A': return normalize({r, -r});
        case 'R': return normalize({r, cplx(0, r)});
        case 'L': return normalize({r, cplx(0, -r)});
        default:
            throw Error(ErrorKind::ParseError, fmt::format("unknown polarization '{}'", label));
    }
}

cplx parse_complex(std::string_view token) {
    std::string compact;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    const std::string_view t = compact;
    if (t.empty()) throw Error(ErrorKind::ParseError, "empty complex literal");
    if (t.back() != 'i') return {parse_real(t, token), 0.0};

    const std::string_view body = t.substr(0, t.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    double im = 0.0;
    if (im_part.empty() || im_part == "+") {
        im = 1.0;
    } else if (im_part == "-") {
        im = -1.0;
    } else {
        im = parse_real(im_part, token);
    }
    const double re = re_part.empty() ? 0.0 : parse_real(re_part, token);
    return {re, im};
}

PureState parse_state(std::string_view text) {
    const std::string_view t = trim(text);
    if (t.size() == 1 && std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != 'i') {
        return polarization(t[0]);
    }
    std::vector<cplx> amps;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = t.find(',', start);
        amps.push_back(parse_complex(t.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (amps.size() < 2) {
        throw Error(ErrorKind::ParseError, fmt::format("state literal '{}' needs >= 2 amplitudes", text));
    }
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
    try {
        return normalize(UnnormalizedVector{std::move(v)});
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, fmt::format("state literal '{}': {}", text, e.what()));
    }
}

std::string format_state(const PureState& s) {
    std::string out;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (i) out += ", ";
        out += fmt::format("{:.17g}{:+.17g}i", s[i].real(), s[i].imag());
    }
    return out;
}

PureState random_state(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    CVector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = {gauss(rng), gauss(rng)};
    return normalize(UnnormalizedVector{std::move(v)});
}

JonesUnitary random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Mat2 g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = {gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Mat2> qr(g);
    Mat2 q = qr.householderQ();
    const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) {
        const cplx d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return JonesUnitary(q);
}

}  // namespace sgqgan
