#pragma once

#include <string>
#include <vector>

#include "frontier/dea.hpp"
#include "frontier/panel.hpp"

namespace frontier::data {

/// Variable roles for one DEA model run. The built-in names bind to the
/// bank-panel column names; custom specs come from a key-value file.
struct ModelSpec {
    std::string name;
    std::vector<std::string> input_vars;
    std::vector<std::string> good_vars;
    std::vector<std::string> bad_vars;
    dea::Rts rts = dea::Rts::Vrs;

    void validate() const;
};

/// PA, IA, PA1, IA1. Throws std::invalid_argument for anything else.
ModelSpec builtin_model_spec(const std::string& name);

/// Parses "key = value" lines: name, rts (vrs|crs), inputs, goods, bads
/// (comma-separated column names).
ModelSpec load_model_spec(const std::string& path);

enum class ZeroPolicyMode { Error, Epsilon, DropTerm };

struct ZeroPolicy {
    ZeroPolicyMode mode = ZeroPolicyMode::Error;
    double epsilon_scale = 1e-6;  // fraction of the positive column mean
};

struct Exclusion {
    std::string bank;
    std::string reason;
};

struct Replacement {
    std::string bank;
    std::string variable;
    double original;
    double replaced_by;
};

struct InstanceBuild {
    dea::DeaInstance instance;
    std::vector<Exclusion> excluded;      // banks observed that year but left out
    std::vector<Replacement> replacements;  // epsilon-policy edits
};

/// Builds the DEA instance for one year: banks with complete data for every
/// spec variable enter; the zero policy handles nonpositive values. Throws
/// when the year is absent, a spec variable is missing from the panel, the
/// Error policy meets a nonpositive value, or no bank survives.
InstanceBuild build_instance(const Panel& panel, int year, const ModelSpec& spec,
                             const ZeroPolicy& policy = {});

}  // namespace frontier::data
