#include "cped/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cped {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
    throw DataError("schema", path + ": " + message);
}

}  // namespace

// ---------------------------------------------------------------------------
// Basic types
// ---------------------------------------------------------------------------

bool CategoricalSet::contains(const std::string& label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

ParamValue ParamValue::number(double v) {
    if (!std::isfinite(v)) {
        throw DataError("value", "parameter value must be finite, got " + fmt_double(v));
    }
    ParamValue p;
    p.value_ = v;
    return p;
}

ParamValue ParamValue::category(std::string label) {
    ParamValue p;
    p.value_ = std::move(label);
    return p;
}

ParamValue ParamValue::inactive() {
    ParamValue p;
    p.value_ = InactiveValue{};
    return p;
}

double ParamValue::number() const {
    if (!is_number()) throw std::logic_error("ParamValue::number() on non-numeric value");
    return std::get<double>(value_);
}

const std::string& ParamValue::category() const {
    if (!is_category()) throw std::logic_error("ParamValue::category() on non-categorical value");
    return std::get<std::string>(value_);
}

// ---------------------------------------------------------------------------
// SearchSpace validation
// ---------------------------------------------------------------------------

namespace {

// Hull over the active domains of a parameter. Continuous and categorical
// kinds must not be mixed (checked earlier).
struct ActiveHull {
    std::optional<ContinuousInterval> interval;
    std::vector<std::string> labels;  // declaration order, deduplicated
};

ActiveHull active_hull(const ParameterSpec& p) {
    ActiveHull hull;
    for (const RegimeSpec& r : p.regimes) {
        if (const auto* ci = std::get_if<ContinuousInterval>(&r.domain)) {
            if (!hull.interval) {
                hull.interval = *ci;
            } else {
                hull.interval->lo = std::min(hull.interval->lo, ci->lo);
                hull.interval->hi = std::max(hull.interval->hi, ci->hi);
            }
        } else if (const auto* cs = std::get_if<CategoricalSet>(&r.domain)) {
            for (const std::string& l : cs->labels) {
                if (std::find(hull.labels.begin(), hull.labels.end(), l) == hull.labels.end()) {
                    hull.labels.push_back(l);
                }
            }
        }
    }
    return hull;
}

void check_domain(const Domain& d, const std::string& where) {
    if (const auto* ci = std::get_if<ContinuousInterval>(&d)) {
        if (!std::isfinite(ci->lo) || !std::isfinite(ci->hi)) {
            throw DataError("schema", where + ": interval bounds must be finite");
        }
        if (!(ci->lo < ci->hi)) {
            throw DataError("schema", where + ": interval requires lo < hi, got [" +
                                          fmt_double(ci->lo) + ", " + fmt_double(ci->hi) + "]");
        }
    } else if (const auto* cs = std::get_if<CategoricalSet>(&d)) {
        if (cs->labels.empty()) {
            throw DataError("schema", where + ": categorical domain must be non-empty");
        }
        std::set<std::string> seen;
        for (const std::string& l : cs->labels) {
            if (!seen.insert(l).second) {
                throw DataError("schema", where + ": duplicate label '" + l + "'");
            }
        }
    }
}

// Verifies that the regimes of `child` partition the parent's active domain
// and resolves closed_hi on the final covering interval.
void check_regime_cover(ParameterSpec& child, const ParameterSpec& parent,
                        const std::string& where) {
    ActiveHull hull = active_hull(parent);
    const bool parent_continuous = hull.interval.has_value();
    const bool parent_categorical = !hull.labels.empty();
    if (!parent_continuous && !parent_categorical) {
        throw DataError("schema", where + ": parent '" + parent.name +
                                      "' has no active domain to condition on");
    }

    if (parent_continuous) {
        // Intersect each regime's interval conditions, then require an exact
        // partition of the hull.
        struct Piece {
            double lo, hi;
            std::size_t regime;
        };
        std::vector<Piece> pieces;
        for (std::size_t ri = 0; ri < child.regimes.size(); ++ri) {
            double lo = hull.interval->lo;
            double hi = hull.interval->hi;
            if (child.regimes[ri].conditions.empty()) {
                throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                              "]: conditional parameter has a regime with no "
                                              "conditions (overlaps every other regime)");
            }
            for (const RegimeCondition& c : child.regimes[ri].conditions) {
                const auto* iv = std::get_if<IntervalTest>(&c.test);
                if (iv == nullptr) {
                    throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                                  "]: equality condition on continuous parent '" +
                                                  parent.name + "'");
                }
                lo = std::max(lo, iv->lo);
                hi = std::min(hi, iv->hi);
            }
            if (!(lo < hi)) {
                throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                              "]: condition conjunction is empty");
            }
            pieces.push_back({lo, hi, ri});
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
        const double span = hull.interval->width();
        const double tol = span * 1e-9;
        double cursor = hull.interval->lo;
        for (const Piece& p : pieces) {
            if (p.lo > cursor + tol) {
                throw DataError("schema", where + ": non-exhaustive regimes; parent '" +
                                              parent.name + "' uncovered on [" + fmt_double(cursor) +
                                              ", " + fmt_double(p.lo) + ")");
            }
            if (p.lo < cursor - tol) {
                throw DataError("schema", where + ": overlapping regimes; parent '" + parent.name +
                                              "' covered twice near " + fmt_double(p.lo));
            }
            cursor = p.hi;
        }
        if (cursor < hull.interval->hi - tol) {
            throw DataError("schema", where + ": non-exhaustive regimes; parent '" + parent.name +
                                          "' uncovered on [" + fmt_double(cursor) + ", " +
                                          fmt_double(hull.interval->hi) + "]");
        }
        // Mark the final covering interval closed at its upper end.
        for (std::size_t ri = 0; ri < child.regimes.size(); ++ri) {
            for (RegimeCondition& c : child.regimes[ri].conditions) {
                if (auto* iv = std::get_if<IntervalTest>(&c.test)) {
                    iv->closed_hi = iv->hi >= hull.interval->hi - tol;
                }
            }
        }
    } else {
        // Categorical parent: each regime's conjunction pins one label and
        // the labels must partition the parent's label set.
        std::map<std::string, std::size_t> covered;
        for (std::size_t ri = 0; ri < child.regimes.size(); ++ri) {
            std::optional<std::string> label;
            for (const RegimeCondition& c : child.regimes[ri].conditions) {
                const auto* eq = std::get_if<EqualsTest>(&c.test);
                if (eq == nullptr) {
                    throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                                  "]: interval condition on categorical parent '" +
                                                  parent.name + "'");
                }
                if (label && *label != eq->label) {
                    throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                                  "]: condition conjunction is empty");
                }
                label = eq->label;
            }
            if (!label) {
                throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                              "]: conditional parameter has a regime with no "
                                              "conditions (overlaps every other regime)");
            }
            if (std::find(hull.labels.begin(), hull.labels.end(), *label) == hull.labels.end()) {
                throw DataError("schema", where + ".regimes[" + std::to_string(ri) +
                                              "]: unknown parent label '" + *label + "'");
            }
            auto [it, inserted] = covered.insert({*label, ri});
            if (!inserted) {
                throw DataError("schema", where + ": overlapping regimes; parent label '" + *label +
                                              "' covered twice");
            }
        }
        for (const std::string& l : hull.labels) {
            if (covered.find(l) == covered.end()) {
                throw DataError("schema", where + ": non-exhaustive regimes; parent label '" + l +
                                              "' uncovered");
            }
        }
    }
}

}  // namespace

SearchSpace SearchSpace::create(std::vector<ParameterSpec> parameters) {
    SearchSpace space;
    std::map<std::string, std::size_t> by_name;

    for (std::size_t pi = 0; pi < parameters.size(); ++pi) {
        ParameterSpec& p = parameters[pi];
        const std::string where = "parameters[" + std::to_string(pi) + "]";
        if (p.name.empty()) {
            throw DataError("schema", where + ".name: empty parameter name");
        }
        if (by_name.count(p.name) > 0) {
            throw DataError("schema", where + ".name: duplicate parameter '" + p.name + "'");
        }
        if (p.regimes.empty()) {
            throw DataError("schema", where + ".regimes: must be non-empty");
        }

        bool has_continuous = false;
        bool has_categorical = false;
        std::optional<std::string> common_parent;
        bool any_conditions = false;

        for (std::size_t ri = 0; ri < p.regimes.size(); ++ri) {
            RegimeSpec& r = p.regimes[ri];
            r.index = static_cast<int>(ri) + 1;
            const std::string rwhere = where + ".regimes[" + std::to_string(ri) + "]";
            check_domain(r.domain, rwhere + ".domain");
            has_continuous = has_continuous || domain_is_continuous(r.domain);
            has_categorical = has_categorical || domain_is_categorical(r.domain);

            for (std::size_t ci = 0; ci < r.conditions.size(); ++ci) {
                const RegimeCondition& c = r.conditions[ci];
                any_conditions = true;
                const std::string cwhere = rwhere + ".conditions[" + std::to_string(ci) + "]";
                auto parent_it = by_name.find(c.parent);
                if (parent_it == by_name.end()) {
                    if (c.parent == p.name) {
                        throw DataError("schema", cwhere + ": cyclic parent reference '" +
                                                      c.parent + "'");
                    }
                    throw DataError("schema",
                                    cwhere + ": parent '" + c.parent +
                                        "' is not declared earlier in the space (parents must "
                                        "precede children)");
                }
                if (common_parent && *common_parent != c.parent) {
                    throw DataError("schema", cwhere +
                                                  ": conditions reference multiple parents ('" +
                                                  *common_parent + "' and '" + c.parent +
                                                  "'); only single-parent conditions are "
                                                  "supported");
                }
                common_parent = c.parent;
                if (const auto* iv = std::get_if<IntervalTest>(&c.test)) {
                    if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || !(iv->lo < iv->hi)) {
                        throw DataError("schema", cwhere + ": invalid interval condition");
                    }
                }
            }
        }

        if (has_continuous && has_categorical) {
            throw DataError("schema", where +
                                          ": regimes mix continuous and categorical domains; a "
                                          "parameter's active regimes must share one kind");
        }
        if (any_conditions) {
            if (!common_parent) {
                throw DataError("schema", where + ": internal: conditions without parent");
            }
            check_regime_cover(p, parameters[by_name.at(*common_parent)], where);
        } else if (p.regimes.size() > 1) {
            throw DataError("schema", where +
                                          ": multiple regimes require conditions (regimes would "
                                          "overlap)");
        }

        by_name.emplace(p.name, pi);
    }

    space.parameters_ = std::move(parameters);
    space.by_name_ = std::move(by_name);
    return space;
}

const ParameterSpec* SearchSpace::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &parameters_[it->second];
}

const ParameterSpec& SearchSpace::parameter(const std::string& name) const {
    const ParameterSpec* p = find(name);
    if (p == nullptr) {
        throw DataError("unknown-parameter", "unknown parameter '" + name + "'");
    }
    return *p;
}

// ---------------------------------------------------------------------------
// JSON parsing / serialization
// ---------------------------------------------------------------------------

namespace {

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

Domain parse_domain(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    if (!j.contains("kind")) schema_error(path + ".kind", "missing field");
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "continuous") {
        if (!j.contains("lo")) schema_error(path + ".lo", "missing field");
        if (!j.contains("hi")) schema_error(path + ".hi", "missing field");
        return ContinuousInterval{require_number(j.at("lo"), path + ".lo"),
                                  require_number(j.at("hi"), path + ".hi")};
    }
    if (kind == "categorical") {
        if (!j.contains("labels") || !j.at("labels").is_array()) {
            schema_error(path + ".labels", "expected an array of strings");
        }
        CategoricalSet cs;
        for (std::size_t i = 0; i < j.at("labels").size(); ++i) {
            const json& l = j.at("labels")[i];
            if (!l.is_string()) {
                schema_error(path + ".labels[" + std::to_string(i) + "]", "expected a string");
            }
            cs.labels.push_back(l.get<std::string>());
        }
        return cs;
    }
    if (kind == "inactive") {
        return InactiveDomain{};
    }
    schema_error(path + ".kind", "unknown domain kind '" + kind +
                                     "' (expected continuous | categorical | inactive)");
}

RegimeCondition parse_condition(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    if (!j.contains("parent") || !j.at("parent").is_string()) {
        schema_error(path + ".parent", "expected a string");
    }
    RegimeCondition c;
    c.parent = j.at("parent").get<std::string>();
    const bool has_in = j.contains("in");
    const bool has_eq = j.contains("equals");
    if (has_in == has_eq) {
        schema_error(path, "expected exactly one of 'in' or 'equals'");
    }
    if (has_in) {
        const json& iv = j.at("in");
        if (!iv.is_array() || iv.size() != 2) {
            schema_error(path + ".in", "expected [lo, hi]");
        }
        c.test = IntervalTest{require_number(iv[0], path + ".in[0]"),
                              require_number(iv[1], path + ".in[1]"), false};
    } else {
        if (!j.at("equals").is_string()) schema_error(path + ".equals", "expected a string");
        c.test = EqualsTest{j.at("equals").get<std::string>()};
    }
    return c;
}

}  // namespace

SearchSpace parse_space(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw DataError("parse", std::string("search-space document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("parameters") || !doc.at("parameters").is_array()) {
        schema_error("parameters", "expected an array");
    }

    std::vector<ParameterSpec> params;
    const json& jparams = doc.at("parameters");
    for (std::size_t pi = 0; pi < jparams.size(); ++pi) {
        const json& jp = jparams[pi];
        const std::string path = "parameters[" + std::to_string(pi) + "]";
        if (!jp.is_object()) schema_error(path, "expected an object");
        if (!jp.contains("name") || !jp.at("name").is_string()) {
            schema_error(path + ".name", "expected a string");
        }
        ParameterSpec p;
        p.name = jp.at("name").get<std::string>();
        if (!jp.contains("regimes") || !jp.at("regimes").is_array()) {
            schema_error(path + ".regimes", "expected an array");
        }
        const json& jregimes = jp.at("regimes");
        for (std::size_t ri = 0; ri < jregimes.size(); ++ri) {
            const json& jr = jregimes[ri];
            const std::string rpath = path + ".regimes[" + std::to_string(ri) + "]";
            if (!jr.is_object()) schema_error(rpath, "expected an object");
            RegimeSpec r;
            if (jr.contains("conditions")) {
                if (!jr.at("conditions").is_array()) {
                    schema_error(rpath + ".conditions", "expected an array");
                }
                for (std::size_t ci = 0; ci < jr.at("conditions").size(); ++ci) {
                    r.conditions.push_back(parse_condition(
                        jr.at("conditions")[ci],
                        rpath + ".conditions[" + std::to_string(ci) + "]"));
                }
            }
            if (!jr.contains("domain")) schema_error(rpath + ".domain", "missing field");
            r.domain = parse_domain(jr.at("domain"), rpath + ".domain");
            p.regimes.push_back(std::move(r));
        }
        params.push_back(std::move(p));
    }
    return SearchSpace::create(std::move(params));
}

SearchSpace parse_space_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("io", "cannot open search-space file '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_space(text.str());
}

std::string serialize_space(const SearchSpace& space) {
    json doc;
    doc["parameters"] = json::array();
    for (const ParameterSpec& p : space.parameters()) {
        json jp;
        jp["name"] = p.name;
        jp["regimes"] = json::array();
        for (const RegimeSpec& r : p.regimes) {
            json jr;
            jr["conditions"] = json::array();
            for (const RegimeCondition& c : r.conditions) {
                json jc;
                jc["parent"] = c.parent;
                if (const auto* iv = std::get_if<IntervalTest>(&c.test)) {
                    jc["in"] = json::array({iv->lo, iv->hi});
                } else {
                    jc["equals"] = std::get<EqualsTest>(c.test).label;
                }
                jr["conditions"].push_back(std::move(jc));
            }
            json jd;
            if (const auto* ci = std::get_if<ContinuousInterval>(&r.domain)) {
                jd["kind"] = "continuous";
                jd["lo"] = ci->lo;
                jd["hi"] = ci->hi;
            } else if (const auto* cs = std::get_if<CategoricalSet>(&r.domain)) {
                jd["kind"] = "categorical";
                jd["labels"] = cs->labels;
            } else {
                jd["kind"] = "inactive";
            }
            jr["domain"] = std::move(jd);
            jp["regimes"].push_back(std::move(jr));
        }
        doc["parameters"].push_back(std::move(jp));
    }
    return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Regime assignment and validation
// ---------------------------------------------------------------------------

namespace {

bool condition_holds(const RegimeCondition& c,
                     const std::map<std::string, ParamValue>& assignments) {
    auto it = assignments.find(c.parent);
    if (it == assignments.end()) {
        throw DataError("validation", "parent '" + c.parent + "' missing from trial");
    }
    const ParamValue& pv = it->second;
    if (pv.is_inactive()) {
        throw DataError("validation",
                        "parent '" + c.parent + "' is inactive; regime condition undefined");
    }
    if (const auto* iv = std::get_if<IntervalTest>(&c.test)) {
        if (!pv.is_number()) {
            throw DataError("validation", "parent '" + c.parent +
                                              "' has a categorical value but an interval "
                                              "condition");
        }
        const double v = pv.number();
        return v >= iv->lo && (v < iv->hi || (iv->closed_hi && v <= iv->hi));
    }
    const auto& eq = std::get<EqualsTest>(c.test);
    if (!pv.is_category()) {
        throw DataError("validation", "parent '" + c.parent +
                                          "' has a numeric value but an equality condition");
    }
    return pv.category() == eq.label;
}

}  // namespace

int assign_regime(const SearchSpace& space, const std::string& param,
                  const std::map<std::string, ParamValue>& assignments) {
    const ParameterSpec& p = space.parameter(param);
    int matched = 0;
    int count = 0;
    for (const RegimeSpec& r : p.regimes) {
        bool holds = true;
        for (const RegimeCondition& c : r.conditions) {
            if (!condition_holds(c, assignments)) {
                holds = false;
                break;
            }
        }
        if (holds) {
            matched = r.index;
            ++count;
        }
    }
    if (count == 0) {
        throw DataError("validation", "no regime of '" + param + "' matches the parent values");
    }
    if (count > 1) {
        throw DataError("validation",
                        "multiple regimes of '" + param +
                            "' match the parent values (space invariant violated)");
    }
    return matched;
}

int assign_regime(const SearchSpace& space, const std::string& param, const Trial& trial) {
    return assign_regime(space, param, trial.assignments);
}

std::vector<Violation> validate_trial(const SearchSpace& space, const Trial& trial) {
    std::vector<Violation> out;
    if (!std::isfinite(trial.objective)) {
        out.push_back({"", "objective must be finite"});
    }
    for (const auto& [name, _] : trial.assignments) {
        if (space.find(name) == nullptr) {
            out.push_back({name, "not declared in the search space"});
        }
    }
    for (const ParameterSpec& p : space.parameters()) {
        auto it = trial.assignments.find(p.name);
        if (it == trial.assignments.end()) {
            out.push_back({p.name, "missing from trial"});
            continue;
        }
        int regime_index = 0;
        try {
            regime_index = assign_regime(space, p.name, trial);
        } catch (const DataError& e) {
            out.push_back({p.name, e.what()});
            continue;
        }
        const Domain& dom = p.regimes[static_cast<std::size_t>(regime_index - 1)].domain;
        const ParamValue& v = it->second;
        if (domain_is_inactive(dom)) {
            if (!v.is_inactive()) {
                out.push_back({p.name, "must be inactive in regime " +
                                           std::to_string(regime_index)});
            }
            continue;
        }
        if (v.is_inactive()) {
            out.push_back({p.name, "must be active in regime " + std::to_string(regime_index)});
            continue;
        }
        if (const auto* ci = std::get_if<ContinuousInterval>(&dom)) {
            if (!v.is_number()) {
                out.push_back({p.name, "expected a numeric value in regime " +
                                           std::to_string(regime_index)});
            } else if (!ci->contains(v.number())) {
                out.push_back({p.name, "value " + fmt_double(v.number()) + " outside [" +
                                           fmt_double(ci->lo) + ", " + fmt_double(ci->hi) + "]"});
            }
        } else {
            const auto& cs = std::get<CategoricalSet>(dom);
            if (!v.is_category()) {
                out.push_back({p.name, "expected a categorical value in regime " +
                                           std::to_string(regime_index)});
            } else if (!cs.contains(v.category())) {
                out.push_back({p.name, "label '" + v.category() + "' not in regime " +
                                           std::to_string(regime_index) + " domain"});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trial ingestion
// ---------------------------------------------------------------------------

EvaluationSet make_evaluation_set(SearchSpace space, std::vector<Trial> trials) {
    for (std::size_t i = 0; i < trials.size(); ++i) {
        auto violations = validate_trial(space, trials[i]);
        if (!violations.empty()) {
            std::string msg = "trial " + std::to_string(i + 1) + " invalid:";
            for (const Violation& v : violations) {
                msg += " [" + v.param + "] " + v.reason + ";";
            }
            throw DataError("validation", msg);
        }
    }
    return EvaluationSet{std::move(space), std::move(trials)};
}

EvaluationSet load_trials(const std::filesystem::path& path, SearchSpace space) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("io", "cannot open trials file '" + path.string() + "'");
    }

    std::vector<Trial> trials;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;  // skip blank lines
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError("parse",
                            "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("params") || !j.at("params").is_object() ||
            !j.contains("value") || !j.at("value").is_number()) {
            throw DataError("schema", "line " + std::to_string(line_no) +
                                          ": expected {\"params\": {...}, \"value\": number}");
        }
        Trial t;
        t.objective = j.at("value").get<double>();
        for (const auto& [key, jv] : j.at("params").items()) {
            if (jv.is_null()) {
                t.assignments.emplace(key, ParamValue::inactive());
            } else if (jv.is_number()) {
                t.assignments.emplace(key, ParamValue::number(jv.get<double>()));
            } else if (jv.is_string()) {
                t.assignments.emplace(key, ParamValue::category(jv.get<std::string>()));
            } else {
                throw DataError("schema", "line " + std::to_string(line_no) + ": params." + key +
                                              ": expected number, string, or null");
            }
        }
        auto violations = validate_trial(space, t);
        if (!violations.empty()) {
            std::string msg = "line " + std::to_string(line_no) + ":";
            for (const Violation& v : violations) {
                msg += " [" + v.param + "] " + v.reason + ";";
            }
            throw DataError("validation", msg);
        }
        trials.push_back(std::move(t));
    }
    if (trials.empty()) {
        throw DataError("empty-input", "empty evaluation set: '" + path.string() + "'");
    }
    return EvaluationSet{std::move(space), std::move(trials)};
}

}  // namespace cped
