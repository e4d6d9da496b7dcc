#include "wdist/json_io.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wdist/version.hpp"

namespace wdist {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json meta_json(const ArtifactMeta& meta) {
    json j;
    j["tool_version"] = meta.tool_version.empty() ? std::string(kVersion) : meta.tool_version;
    j["timestamp"] = meta.timestamp;
    j["config"] = meta.config;
    return j;
}

json matrix_json(const Matrix& x) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            entries.push_back({x(i, j).real(), x(i, j).imag()});
    return json{{"rows", x.rows()}, {"cols", x.cols()}, {"entries", std::move(entries)}};
}

json state_json(const StandardState& s) {
    return json{{"d", s.d},
                {"alpha", s.alpha},
                {"beta", s.beta},
                {"lambda", s.lambda},
                {"n_alpha", s.n_alpha},
                {"m_beta", s.m_beta}};
}

json rank2_json(const Rank2Vector& v) {
    auto cvec = [](const Vector& x) {
        json a = json::array();
        for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back({x(i).real(), x(i).imag()});
        return a;
    };
    json j;
    j["d"] = v.d;
    j["copies"] = v.copies;
    j["a"] = {v.a.real(), v.a.imag()};
    j["b"] = {v.b.real(), v.b.imag()};
    j["e1"] = cvec(v.e1);
    j["e2"] = cvec(v.e2);
    j["f1"] = cvec(v.f1);
    j["f2"] = cvec(v.f2);
    return j;
}

}  // namespace

std::string iso_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string operator_to_json(const Matrix& x) { return matrix_json(x).dump(); }

Matrix operator_from_json(const std::string& text) {
    const json j = json::parse(text);
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const json& entries = j.at("entries");
    if (rows < 0 || cols < 0 || entries.size() != static_cast<size_t>(rows * cols))
        throw std::invalid_argument("operator_from_json: entry count does not match shape");
    Matrix x(rows, cols);
    size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k)
            x(i, j2) = Complex(entries[k].at(0).get<double>(), entries[k].at(1).get<double>());
    return x;
}

std::string state_to_json(const StandardState& s) { return state_json(s).dump(); }

StandardState state_from_json(const std::string& text) {
    const json j = json::parse(text);
    return state_from_beta(j.at("d").get<int>(), j.at("beta").get<double>());
}

std::string state_artifact(const StandardState& s, const ArtifactMeta& meta,
                           bool include_matrices) {
    json j;
    j["meta"] = meta_json(meta);
    j["state"] = state_json(s);
    if (include_matrices) {
        j["rho"] = matrix_json(rho_alpha(s.d, s.alpha));
        j["rho_pt"] = matrix_json(rho_pt(s.d, s.beta));
    }
    return j.dump(2);
}

std::string protocol_to_json(const MixingProtocol& p, const ArtifactMeta& meta) {
    json events = json::array();
    for (const auto& ev : p.events) {
        json alts = json::array();
        for (const auto& alt : ev.alternatives)
            alts.push_back({{"label", alt.label}, {"probability", alt.probability}});
        events.push_back({{"alternatives", std::move(alts)}});
    }
    json j;
    j["meta"] = meta_json(meta);
    j["d"] = p.d;
    j["event_count"] = p.events.size();
    j["events"] = std::move(events);
    return j.dump(2);
}

std::string certificate_to_json(const Certificate& c, const ArtifactMeta& meta) {
    json claims = json::array();
    for (const auto& cl : c.claims) {
        json jc;
        jc["copies"] = cl.n;
        jc["kind"] = cl.kind == ClaimKind::Certified ? "certified" : "evidence";
        jc[cl.kind == ClaimKind::Certified ? "beta_bound" : "lambda_min"] = cl.bound_or_lambda;
        jc["source"] = cl.source;
        claims.push_back(std::move(jc));
    }
    json j;
    j["meta"] = meta_json(meta);
    j["d"] = c.d;
    j["beta"] = c.beta;
    j["region"] = region_to_string(c.region);
    j["claims"] = std::move(claims);
    if (c.witness) j["witness"] = rank2_json(*c.witness);
    j["search_config"] = {{"restarts", c.config.restarts},
                          {"max_iters", c.config.max_iters},
                          {"tol", c.config.tol},
                          {"seed", c.config.seed},
                          {"symmetry_mode", c.config.symmetry_mode}};
    return j.dump(2);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "beta,alpha,lambda,region,certified_bound_n1,certified_bound_n2,"
           "certified_bound_n3,lambda_min_search\n";
    for (const auto& row : rows) {
        out << fmt17(row.beta) << ',' << fmt17(row.alpha) << ',' << fmt17(row.lambda) << ','
            << region_to_string(row.region);
        for (size_t i = 0; i < 3; ++i)
            out << ',' << (i < row.certified_bounds.size() ? fmt17(row.certified_bounds[i]) : "");
        out << ',' << fmt17(row.lambda_min_search) << '\n';
    }
    return out.str();
}

std::string meta_to_json(const ArtifactMeta& meta) { return meta_json(meta).dump(2); }

}  // namespace wdist
