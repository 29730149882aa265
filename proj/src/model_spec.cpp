#include "frontier/model_spec.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace frontier::data {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("model_spec: " + msg); }

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

void ModelSpec::validate() const {
    if (input_vars.empty()) fail("spec '" + name + "' has no input variables");
    if (good_vars.empty()) fail("spec '" + name + "' has no good-output variables");
    std::vector<std::string> all = input_vars;
    all.insert(all.end(), good_vars.begin(), good_vars.end());
    all.insert(all.end(), bad_vars.begin(), bad_vars.end());
    std::set<std::string> uniq(all.begin(), all.end());
    if (uniq.size() != all.size()) fail("spec '" + name + "' assigns a variable to more than one role");
}

ModelSpec builtin_model_spec(const std::string& name) {
    ModelSpec spec;
    spec.name = name;
    spec.rts = dea::Rts::Vrs;
    if (name == "PA") {
        spec.input_vars = {"coreasset", "ie", "oe"};
        spec.good_vars = {"netprofit"};
        spec.bad_vars = {"npl"};
    } else if (name == "IA") {
        spec.input_vars = {"coreasset", "ie", "oe"};
        spec.good_vars = {"save", "loan"};
        spec.bad_vars = {"npl"};
    } else if (name == "PA1") {
        spec.input_vars = {"asset", "ie", "oe"};
        spec.good_vars = {"netprofit"};
        spec.bad_vars = {"npl"};
    } else if (name == "IA1") {
        spec.input_vars = {"fixedasset", "ie", "oe"};
        spec.good_vars = {"save", "loan"};
        spec.bad_vars = {"npl"};
    } else {
        fail("unknown model '" + name + "'; built-ins are PA, IA, PA1, IA1");
    }
    spec.validate();
    return spec;
}

ModelSpec load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open spec file '" + path + "'");

    ModelSpec spec;
    spec.name = "custom";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            fail("spec file line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "name") {
            spec.name = value;
        } else if (key == "rts") {
            if (value == "vrs") spec.rts = dea::Rts::Vrs;
            else if (value == "crs") spec.rts = dea::Rts::Crs;
            else fail("spec file line " + std::to_string(line_no) + ": rts must be vrs or crs");
        } else if (key == "inputs") {
            spec.input_vars = split_list(value);
        } else if (key == "goods") {
            spec.good_vars = split_list(value);
        } else if (key == "bads") {
            spec.bad_vars = split_list(value);
        } else {
            fail("spec file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    spec.validate();
    return spec;
}

InstanceBuild build_instance(const Panel& panel, int year, const ModelSpec& spec,
                             const ZeroPolicy& policy) {
    spec.validate();
    std::vector<std::string> all_vars = spec.input_vars;
    all_vars.insert(all_vars.end(), spec.good_vars.begin(), spec.good_vars.end());
    all_vars.insert(all_vars.end(), spec.bad_vars.begin(), spec.bad_vars.end());
    for (const auto& v : all_vars)
        if (!panel.has_variable(v)) fail("panel has no column '" + v + "' required by spec " + spec.name);

    const auto rows = panel.rows_for_year(year);
    if (rows.empty()) fail("no observations for year " + std::to_string(year));

    InstanceBuild out;
    std::vector<std::size_t> kept;
    for (const auto r : rows) {
        std::string missing;
        for (const auto& v : all_vars) {
            if (is_missing(panel.column(v)[r])) {
                missing = v;
                break;
            }
        }
        if (!missing.empty())
            out.excluded.push_back({panel.banks()[r], "missing " + missing + " in " + std::to_string(year)});
        else
            kept.push_back(r);
    }
    // deterministic DMU order irrespective of file row order
    std::sort(kept.begin(), kept.end(),
              [&](std::size_t a, std::size_t b) { return panel.banks()[a] < panel.banks()[b]; });
    if (kept.empty())
        throw std::invalid_argument("model_spec: no bank has complete data for spec " + spec.name +
                                    " in year " + std::to_string(year));

    auto& inst = out.instance;
    inst.dmu_ids.reserve(kept.size());
    for (const auto r : kept) inst.dmu_ids.push_back(panel.banks()[r]);
    inst.rts = spec.rts;
    inst.period = year;
    inst.input_names = spec.input_vars;
    inst.good_names = spec.good_vars;
    inst.bad_names = spec.bad_vars;
    inst.allow_zero = policy.mode == ZeroPolicyMode::DropTerm;

    const auto n = static_cast<Eigen::Index>(kept.size());
    inst.inputs.resize(static_cast<Eigen::Index>(spec.input_vars.size()), n);
    inst.goods.resize(static_cast<Eigen::Index>(spec.good_vars.size()), n);
    inst.bads.resize(static_cast<Eigen::Index>(spec.bad_vars.size()), n);

    auto fill = [&](Eigen::MatrixXd& mat, const std::vector<std::string>& vars) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const auto& col = panel.column(vars[i]);
            double positive_sum = 0.0;
            int positive_count = 0;
            for (const auto r : kept) {
                if (col[r] > 0.0) {
                    positive_sum += col[r];
                    ++positive_count;
                }
            }
            const double positive_mean = positive_count > 0 ? positive_sum / positive_count : 0.0;

            for (std::size_t j = 0; j < kept.size(); ++j) {
                double v = col[kept[j]];
                if (v <= 0.0) {
                    switch (policy.mode) {
                        case ZeroPolicyMode::Error:
                            throw std::invalid_argument(
                                "model_spec: nonpositive value for bank " + inst.dmu_ids[j] + ", year " +
                                std::to_string(year) + ", variable " + vars[i] +
                                " (zero policy is 'error')");
                        case ZeroPolicyMode::Epsilon: {
                            const double replaced = policy.epsilon_scale * positive_mean;
                            if (replaced <= 0.0)
                                throw std::invalid_argument(
                                    "model_spec: epsilon policy cannot repair variable " + vars[i] +
                                    " in year " + std::to_string(year) + ": no positive values in column");
                            out.replacements.push_back({inst.dmu_ids[j], vars[i], v, replaced});
                            v = replaced;
                            break;
                        }
                        case ZeroPolicyMode::DropTerm:
                            if (v < 0.0)
                                throw std::invalid_argument(
                                    "model_spec: negative value for bank " + inst.dmu_ids[j] + ", year " +
                                    std::to_string(year) + ", variable " + vars[i] +
                                    " cannot be kept under drop-term");
                            break;
                    }
                }
                mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            }
        }
    };
    fill(inst.inputs, spec.input_vars);
    fill(inst.goods, spec.good_vars);
    fill(inst.bads, spec.bad_vars);

    inst.validate();
    return out;
}

}  // namespace frontier::data
