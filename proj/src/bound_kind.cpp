#include "tailbound/bound_kind.hpp"

#include "tailbound/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace tailbound {

namespace {

void check_positive(double value, const char* name, bool allow_inf) {
    if (std::isnan(value) || !(value > 0.0) || (!allow_inf && std::isinf(value)))
        throw InvalidParameter(name, allow_inf ? "must be > 0" : "must be finite and > 0");
}

BoundKind make(BoundTag tag, double a, double b) {
    BoundKind kind;
    kind.tag = tag;
    kind.a = a;
    kind.b = b;
    if (kind.has_a()) check_positive(a, "a", false);
    if (kind.has_b()) check_positive(b, "b", false);
    return kind;
}

std::string format_number(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

double parse_number(std::string_view text, const char* name) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw InvalidParameter(name, "cannot parse '" + std::string(text) + "' as a number");
    return value;
}

}  // namespace

BoundKind BoundKind::thm1(double a) { return make(BoundTag::upper_thm1, a, 1.0); }
BoundKind BoundKind::thm2(double a) { return make(BoundTag::upper_thm2, a, 1.0); }
BoundKind BoundKind::cor1() { return make(BoundTag::upper_cor1, 1.0, 1.0); }
BoundKind BoundKind::cor2() { return make(BoundTag::upper_cor2, 1.0, 1.0); }
BoundKind BoundKind::thm3(double a, double b) { return make(BoundTag::lower_thm3, a, b); }
BoundKind BoundKind::thm4(double a, double b) { return make(BoundTag::lower_thm4, a, b); }
BoundKind BoundKind::cor3(double b) { return make(BoundTag::lower_cor3, 1.0, b); }
BoundKind BoundKind::cor4(double b) { return make(BoundTag::lower_cor4, 1.0, b); }
BoundKind BoundKind::thm5(double b) { return make(BoundTag::lower_thm5, 1.0, b); }

bool BoundKind::is_upper() const {
    switch (tag) {
        case BoundTag::upper_thm1:
        case BoundTag::upper_thm2:
        case BoundTag::upper_cor1:
        case BoundTag::upper_cor2: return true;
        default: return false;
    }
}

bool BoundKind::has_a() const {
    switch (tag) {
        case BoundTag::upper_thm1:
        case BoundTag::upper_thm2:
        case BoundTag::lower_thm3:
        case BoundTag::lower_thm4: return true;
        default: return false;
    }
}

bool BoundKind::has_b() const { return !is_upper(); }

double BoundKind::effective_a() const {
    switch (tag) {
        case BoundTag::upper_cor1:
        case BoundTag::lower_cor3: return 1.0;
        case BoundTag::upper_cor2:
        case BoundTag::lower_cor4:
        case BoundTag::lower_thm5: return std::numeric_limits<double>::infinity();
        default: return a;
    }
}

std::string_view BoundKind::id() const {
    switch (tag) {
        case BoundTag::upper_thm1: return "thm1";
        case BoundTag::upper_thm2: return "thm2";
        case BoundTag::upper_cor1: return "cor1";
        case BoundTag::upper_cor2: return "cor2";
        case BoundTag::lower_thm3: return "thm3";
        case BoundTag::lower_thm4: return "thm4";
        case BoundTag::lower_cor3: return "cor3";
        case BoundTag::lower_cor4: return "cor4";
        case BoundTag::lower_thm5: return "thm5";
    }
    return "unknown";
}

std::string BoundKind::label() const {
    std::string out(id());
    if (has_a() && has_b()) return out + ":a=" + format_number(a) + ",b=" + format_number(b);
    if (has_a()) return out + ":a=" + format_number(a);
    if (has_b()) return out + ":b=" + format_number(b);
    return out;
}

bool operator==(const BoundKind& lhs, const BoundKind& rhs) {
    if (lhs.tag != rhs.tag) return false;
    if (lhs.has_a() && lhs.a != rhs.a) return false;
    if (lhs.has_b() && lhs.b != rhs.b) return false;
    return true;
}

BoundKind parse_bound_kind(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    double a = 1.0;
    double b = 1.0;
    bool has_a = false;
    bool has_b = false;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw InvalidParameter("kind", "expected name=value in '" + std::string(text) + "'");
            const std::string_view key = item.substr(0, eq);
            const std::string_view value = item.substr(eq + 1);
            if (key == "a") {
                has_a = true;
                a = value == "inf" ? std::numeric_limits<double>::infinity() : parse_number(value, "a");
            } else if (key == "b") {
                has_b = true;
                b = parse_number(value, "b");
            } else {
                throw InvalidParameter("kind", "unknown parameter '" + std::string(key) + "'");
            }
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    auto reject = [&](bool present, const char* name) {
        if (present)
            throw InvalidParameter(name, "'" + std::string(head) + "' takes no parameter " + name);
    };
    if (head == "thm1" || head == "thm2") reject(has_b, "b");
    if (head == "cor1" || head == "cor2") {
        reject(has_a, "a");
        reject(has_b, "b");
    }
    if (head == "cor3" || head == "cor4" || head == "thm5") reject(has_a, "a");
    // a=inf on the general forms selects the dedicated limit tags.
    if (head == "thm1" || head == "thm2") {
        if (std::isinf(a) && a > 0) return BoundKind::cor2();
        return head == "thm1" ? BoundKind::thm1(a) : BoundKind::thm2(a);
    }
    if (head == "cor1") return BoundKind::cor1();
    if (head == "cor2") return BoundKind::cor2();
    if (head == "thm3" || head == "thm4") {
        if (std::isinf(a) && a > 0) return BoundKind::cor4(b);
        return head == "thm3" ? BoundKind::thm3(a, b) : BoundKind::thm4(a, b);
    }
    if (head == "cor3") return BoundKind::cor3(b);
    if (head == "cor4") return BoundKind::cor4(b);
    if (head == "thm5") return BoundKind::thm5(b);
    throw InvalidParameter("kind", "unknown bound kind '" + std::string(head) + "'");
}

double bound_anchor(const DistributionModel& model, const BoundKind& kind) {
    const SupportSpec& s = model.support();
    if (s.upper_finite())
        throw PreconditionError("right_unbounded_support",
                                "right-tail bounds need support extending to +inf; reflect the model "
                                "only when its left tail is unbounded");
    switch (kind.tag) {
        case BoundTag::upper_thm1:
        case BoundTag::lower_thm3:
            if (!(s.lower == 0.0))
                throw PreconditionError("support_lower_zero", kind.label() + " needs support starting at 0");
            return 0.0;
        case BoundTag::upper_thm2:
        case BoundTag::upper_cor1:
        case BoundTag::lower_thm4:
        case BoundTag::lower_cor3:
        case BoundTag::lower_cor4:
            if (!s.lower_finite())
                throw PreconditionError("finite_support_lower", kind.label() + " needs a finite lower endpoint");
            return s.lower;
        case BoundTag::upper_cor2: return std::numeric_limits<double>::quiet_NaN();
        case BoundTag::lower_thm5:
            if (s.lower_finite())
                throw PreconditionError("real_line_support", "thm5 needs support (-inf, inf)");
            if (!model.mean())
                throw PreconditionError("mean_known", "thm5 needs the mean; see with_quadrature_mean");
            return *model.mean();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool kind_applicable(const DistributionModel& model, const BoundKind& kind) {
    try {
        bound_anchor(model, kind);
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

}  // namespace tailbound
