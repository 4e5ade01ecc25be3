#include "dimcalc/exec.hpp"

#include <ostream>
#include <sstream>

#include "dimcalc/invariants.hpp"
#include "dimcalc/tensor.hpp"
#include "json.hpp"

namespace dimcalc {

namespace {

using nlohmann::json;

json value_json(const DimValue& v) {
    if (v.is_exact()) return json{{"exact", v.value()}};
    return json{{"interval", {{"lo", v.lo}, {"hi", v.hi}}}};
}

json checks_json(const std::vector<HypothesisCheck>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"condition", c.condition}, {"passed", c.passed}});
    return arr;
}

json trace_json(const DerivationTrace& t) {
    json node{{"rule", rule_id_string(t.rule)},
              {"value", value_json(t.value)},
              {"applied", t.applied},
              {"hypothesisChecks", checks_json(t.checks)}};
    json kids = json::array();
    for (const auto& c : t.children) kids.push_back(trace_json(c));
    node["children"] = kids;
    return node;
}

json bundle_json(const InvariantBundle& b) {
    json maximal;
    if (b.maximal)
        maximal = {{"height", b.maximal->height},
                   {"residueTdeg", b.maximal->residue_tdeg},
                   {"isUniqueMaximal", b.maximal->is_unique_maximal}};
    return json{{"tdeg", b.tdeg},
                {"krullDim", value_json(b.krull_dim)},
                {"valuativeDim", value_json(b.valuative_dim)},
                {"isAF", to_string(b.is_af)},
                {"isJaffard", to_string(b.is_jaffard)},
                {"isDomain", b.is_domain},
                {"isField", b.is_field},
                {"maximal", maximal}};
}

std::string bundle_text(const InvariantBundle& b) {
    std::ostringstream out;
    out << "tdeg " << b.tdeg << ", dim " << b.krull_dim.str() << ", vdim "
        << b.valuative_dim.str() << ", AF " << to_string(b.is_af) << ", Jaffard "
        << to_string(b.is_jaffard) << ", domain " << (b.is_domain ? "yes" : "no") << ", field "
        << (b.is_field ? "yes" : "no") << ", maximal ";
    if (b.maximal) {
        out << "(ht " << b.maximal->height << ", res-tdeg " << b.maximal->residue_tdeg
            << (b.maximal->is_unique_maximal ? ", unique)" : ")");
    } else {
        out << "none";
    }
    return out.str();
}

void print_trace(std::ostream& out, const DerivationTrace& t, int indent) {
    std::string pad(indent, ' ');
    out << pad << (t.applied ? "" : "rejected ") << rule_id_string(t.rule) << " -> "
        << t.value.str() << "\n";
    for (const auto& c : t.checks)
        out << pad << "  " << (c.passed ? "+ " : "x ") << c.condition << "\n";
    for (const auto& c : t.children) print_trace(out, c, indent + 2);
}

struct QueryOutput {
    std::string text;                      // value portion of the text line
    std::string rule_label;                // short display name
    json value = nullptr;
    std::string rule_id = "invariants";
    json checks = json::array();
    json trace = nullptr;
    bool has_trace = false;
    DerivationTrace trace_store;
};

QueryOutput run_query(const Query& q) {
    QueryOutput out;
    switch (q.kind) {
        case QueryKind::Invariants: {
            InvariantBundle b = analyze(q.args[0]);
            out.text = bundle_text(b);
            out.value = bundle_json(b);
            out.rule_label = "invariants";
            return out;
        }
        case QueryKind::Dim: {
            DimValue v = krull_dim(q.args[0]);
            out.text = v.str();
            out.value = value_json(v);
            out.rule_label = "invariants";
            return out;
        }
        case QueryKind::VDim: {
            DimValue v = valuative_dim(q.args[0]);
            out.text = v.str();
            out.value = value_json(v);
            out.rule_label = "invariants";
            return out;
        }
        case QueryKind::Jaffard: {
            TriState t = jaffard_status(q.args[0]);
            out.text = to_string(t);
            out.value = to_string(t);
            out.rule_label = "invariants";
            return out;
        }
        case QueryKind::TensorDim:
        case QueryKind::TensorVDim: {
            DimResult r = q.kind == QueryKind::TensorDim
                              ? tensor_krull_dim(q.args[0], q.args[1])
                              : tensor_valuative_dim(q.args[0], q.args[1]);
            out.text = r.value.str();
            out.value = value_json(r.value);
            out.rule_id = rule_id_string(r.trace.rule);
            out.rule_label = rule_display_name(r.trace.rule);
            out.checks = checks_json(r.trace.checks);
            out.trace = trace_json(r.trace);
            out.trace_store = std::move(r.trace);
            out.has_trace = true;
            return out;
        }
        case QueryKind::TensorJaffard: {
            TriResult r = tensor_jaffard(q.args[0], q.args[1]);
            out.text = to_string(r.value);
            out.value = to_string(r.value);
            out.rule_id = rule_id_string(r.trace.rule);
            out.rule_label = rule_display_name(r.trace.rule);
            out.checks = checks_json(r.trace.checks);
            out.trace = trace_json(r.trace);
            out.trace_store = std::move(r.trace);
            out.has_trace = true;
            return out;
        }
        case QueryKind::Alphas: {
            auto alphas = alpha_values(q.args[0], q.args[1]);
            out.text = "alpha1 " + alphas[0].str() + ", alpha2 " + alphas[1].str() +
                       ", alpha3 " + alphas[2].str();
            out.value = json::array({value_json(alphas[0]), value_json(alphas[1]),
                                     value_json(alphas[2])});
            out.rule_id = "alphas";
            out.rule_label = "alphas";
            return out;
        }
        case QueryKind::RawThm19: {
            DimValue v = raw_theorem19(q.args[0], q.args[1]);
            out.text = v.str();
            out.value = value_json(v);
            out.rule_id = "F4-Thm1.9(raw)";
            out.rule_label = "Thm 1.9, hypotheses unchecked";
            return out;
        }
    }
    throw InternalError("unhandled query kind");
}

}  // namespace

int execute(const SourceProgram& program, const ExecOptions& options, std::ostream& out,
            std::ostream& err) {
    bool had_error = false;
    json report = json::array();

    auto validate_term = [&](const ExprPtr& e, const Span& span, const std::string& where) {
        auto violations = validate(e);
        for (const auto& v : violations)
            err << "error at " << span.line << ":" << span.col << ": in " << where << ": "
                << v.path << ": " << v.message << "\n";
        return violations.empty();
    };

    for (const auto& def : program.defs) {
        if (!validate_term(def.expr, def.span, "(def " + def.name + " ...)")) had_error = true;
    }

    for (const auto& q : program.queries) {
        bool args_ok = true;
        for (const auto& arg : q.args)
            if (!validate_term(arg, q.span, q.display)) args_ok = false;
        if (!args_ok) {
            had_error = true;
            continue;
        }
        try {
            QueryOutput result = run_query(q);
            if (options.json) {
                report.push_back({{"query", q.display},
                                  {"value", result.value},
                                  {"rule", result.rule_id},
                                  {"hypothesisChecks", result.checks},
                                  {"trace", result.trace}});
            } else {
                out << q.display << " = " << result.text << " [" << result.rule_label << "]\n";
                if (options.trace && result.has_trace)
                    print_trace(out, result.trace_store, 4);
            }
        } catch (const EngineError& e) {
            err << "error at " << q.span.line << ":" << q.span.col << ": in " << q.display
                << ": " << e.what() << "\n";
            had_error = true;
        } catch (const InternalError& e) {
            err << "internal consistency failure at " << q.span.line << ":" << q.span.col
                << ": in " << q.display << ": " << e.what() << "\n";
            return 2;
        }
    }

    if (options.json) out << report.dump(2) << "\n";
    return had_error ? 1 : 0;
}

}  // namespace dimcalc
