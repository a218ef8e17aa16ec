#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsob/fields.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/verify.hpp"

namespace nlsob {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& field, const std::string& msg);
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

// key = value lines; [kernel] and [function] open repeated sections
struct Section {
    std::string kind;
    int line = 0;
    std::map<std::string, std::pair<std::string, int>> kv;  // value, line

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string str(const std::string& key, const std::string& def = "") const;
    double num(const std::string& key, double def) const;
    double num(const std::string& key) const;
    std::vector<double> list(const std::string& key, const std::vector<double>& def) const;
    int line_of(const std::string& key) const;
};

struct ExperimentConfig {
    Section global;
    std::vector<Section> kernels;
    std::vector<Section> functions;
    std::string base_dir = ".";

    std::string suite = "all";
    VerifyMode mode = VerifyMode::assumption_a;
    std::vector<double> ts = {2.0};
    int resolution = 1024;
    double box_lo = -4.0, box_hi = 4.0;
    std::string out = "out";
    double tolerance = 0.0;  // extra floor on report tolerances
    int workers = 1;
    int d = 1;
    double p = 2.0;
    double omega_lo = 0.0, omega_hi = 1.0;
    std::vector<double> bbm_s = {0.9, 0.95, 0.99};
    double bbm_lo = -2.0, bbm_hi = 2.0;
    double inverse_q = 4.0, inverse_c = 32.0;
    unsigned long long seed = 12345;
    int lemma_count = 100;
};

ExperimentConfig parse_config(std::istream& is, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);
// fills the typed fields from the global section and validates them
void finalize_config(ExperimentConfig& cfg);

struct NamedKernel {
    std::string name;
    Kernel kernel;
    double s = 0.0;  // fractional parameter when the kernel is fractional
};

struct NamedFunction {
    std::string name;
    GridFunction u;
};

NamedKernel make_kernel(const Section& sec, int d, double p, const std::string& base_dir);
NamedFunction make_function(const Section& sec, const ExperimentConfig& cfg, double lo, double hi,
                            int resolution);

std::vector<NamedKernel> build_kernels(const ExperimentConfig& cfg);
std::vector<NamedFunction> build_functions(const ExperimentConfig& cfg);

// "type=fractional,s=0.25" style inline spec
Section parse_inline(const std::string& kind, const std::string& spec);

}  // namespace nlsob
