#include "hankel_scs/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hscs::io {

using json = nlohmann::ordered_json;

namespace {

json pair_array(const ComplexSignal& x)
{
    json a = json::array();
    for (Index i = 0; i < x.size(); ++i) a.push_back({x[i].real(), x[i].imag()});
    return a;
}

json parse(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string(what) + ": malformed JSON: " + e.what());
    }
}

template <class T>
T field(const json& j, const char* key, const char* what)
{
    if (!j.contains(key)) throw InvalidArgument(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string(what) + ": bad field \"" + key + "\": " + e.what());
    }
}

}  // namespace

std::string ssig_to_string(const ComplexSignal& samples, const SamplingMask& mask)
{
    require(samples.size() == mask.n(), "ssig: mask length mismatch");
    json j;
    j["n"] = mask.n();
    j["observed"] = mask.indices();
    j["samples"] = pair_array(samples);
    return j.dump() + "\n";
}

SignalFile parse_ssig(const std::string& text)
{
    const json j = parse(text, "ssig");
    const auto n = field<Index>(j, "n", "ssig");
    const auto idx = field<std::vector<Index>>(j, "observed", "ssig");
    const auto raw = field<std::vector<std::vector<double>>>(j, "samples", "ssig");
    require(n >= 1, "ssig: n must be >= 1");
    require(static_cast<Index>(raw.size()) == n, "ssig: samples must have length n");
    SignalFile f;
    f.samples.resize(n);
    for (Index i = 0; i < n; ++i) {
        const auto& p = raw[static_cast<std::size_t>(i)];
        require(p.size() == 2, "ssig: samples must be [re, im] pairs");
        f.samples[i] = cplx(p[0], p[1]);
    }
    const std::set<Index> distinct(idx.begin(), idx.end());
    f.mask = SamplingMask(n, idx, distinct.size() != idx.size());
    return f;
}

std::string smodel_to_string(const SpectralModel& model)
{
    model.validate();
    json j;
    j["n"] = model.n;
    j["r"] = model.rank();
    j["freqs"] = model.freqs;
    j["dampings"] = model.dampings;
    std::vector<double> re, im;
    for (const cplx& a : model.amps) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    j["amps_re"] = re;
    j["amps_im"] = im;
    return j.dump() + "\n";
}

SpectralModel parse_smodel(const std::string& text)
{
    const json j = parse(text, "smodel");
    SpectralModel m;
    m.n = field<Index>(j, "n", "smodel");
    const auto r = field<Index>(j, "r", "smodel");
    m.freqs = field<std::vector<double>>(j, "freqs", "smodel");
    m.dampings = field<std::vector<double>>(j, "dampings", "smodel");
    const auto re = field<std::vector<double>>(j, "amps_re", "smodel");
    const auto im = field<std::vector<double>>(j, "amps_im", "smodel");
    require(re.size() == im.size(), "smodel: amplitude arrays differ in length");
    for (std::size_t k = 0; k < re.size(); ++k) m.amps.emplace_back(re[k], im[k]);
    require(m.rank() == r, "smodel: r does not match the number of modes");
    m.validate();
    return m;
}

std::string result_to_string(const RecoveryResult& res, bool with_balancing_gap)
{
    json j;
    j["x_hat"] = pair_array(res.x_hat);
    j["iters"] = res.iters;
    j["termination"] = to_string(res.termination);
    json h = json::array();
    for (const auto& rec : res.history) {
        json e;
        e["k"] = rec.k;
        e["loss"] = rec.loss;
        e["rel_change"] = rec.rel_change;
        e["step"] = rec.step;
        e["ms"] = rec.ms;
        if (with_balancing_gap) e["balancing_gap"] = rec.balancing_gap;
        h.push_back(std::move(e));
    }
    j["history"] = std::move(h);
    return j.dump() + "\n";
}

StepPolicy parse_step(const std::string& spec)
{
    if (spec == "backtrack") return Backtracking{};
    const std::string prefix = "fixed";
    if (spec.rfind(prefix, 0) == 0) {
        FixedStep f;
        if (spec.size() > prefix.size()) {
            require(spec[prefix.size()] == ':', "step: expected fixed:<eta'>");
            try {
                std::size_t used = 0;
                const std::string num = spec.substr(prefix.size() + 1);
                f.eta_prime = std::stod(num, &used);
                require(used == num.size(), "step: trailing characters after eta'");
            } catch (const std::logic_error&) {
                throw InvalidArgument("step: cannot parse eta' in \"" + spec + "\"");
            }
        }
        require(f.eta_prime > 0.0, "step: eta' must be > 0");
        return f;
    }
    throw InvalidArgument("step: expected \"backtrack\" or \"fixed:<eta'>\", got \"" + spec + "\"");
}

void apply_config(const std::string& text, SolverConfig& cfg)
{
    const json j = parse(text, "config");
    require(j.is_object(), "config: expected a JSON object");
    static const std::set<std::string> known = {
        "r", "max_iters", "tol", "step", "eta_prime", "projection", "mu", "eps0",
        "sample_splitting", "splits", "seed", "divergence_factor", "balancing_weight"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw InvalidArgument("config: unknown key \"" + k + "\"");
    if (j.contains("r")) cfg.r = field<Index>(j, "r", "config");
    if (j.contains("max_iters")) cfg.max_iters = field<int>(j, "max_iters", "config");
    if (j.contains("tol")) cfg.rel_change_tol = field<double>(j, "tol", "config");
    if (j.contains("step")) cfg.step = parse_step(field<std::string>(j, "step", "config"));
    if (j.contains("eta_prime"))
        cfg.step = FixedStep{field<double>(j, "eta_prime", "config")};
    if (j.contains("projection")) cfg.projection = field<bool>(j, "projection", "config");
    if (j.contains("mu")) cfg.mu = field<double>(j, "mu", "config");
    if (j.contains("eps0")) cfg.eps0 = field<double>(j, "eps0", "config");
    if (j.contains("sample_splitting"))
        cfg.sample_splitting = field<bool>(j, "sample_splitting", "config");
    if (j.contains("splits")) cfg.splits = field<int>(j, "splits", "config");
    if (j.contains("seed")) cfg.seed = field<std::uint64_t>(j, "seed", "config");
    if (j.contains("divergence_factor"))
        cfg.divergence_factor = field<double>(j, "divergence_factor", "config");
    if (j.contains("balancing_weight"))
        cfg.balancing_weight = field<double>(j, "balancing_weight", "config");
    cfg.validate();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open \"" + path + "\" for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open \"" + path + "\" for writing");
    out << text;
    if (!out) throw NumericalError("write to \"" + path + "\" failed");
}

}  // namespace hscs::io
