/*
 Copyright 2026 The gramsched Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "gramsched/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gramsched::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
    return j.at(key);
}

Index dimension(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw InvalidArgument(std::string("field '") + key + "' must be a positive integer");
    }
    return static_cast<Index>(v.get<long long>());
}

double real(const Json& v, const char* what) {
    if (!v.is_number()) throw InvalidArgument(std::string(what) + " must be a number");
    return v.get<double>();
}

Matrix row_major(const Json& j, const char* key, Index rows, Index cols) {
    const Json& v = field(j, key);
    if (!v.is_array() || static_cast<Index>(v.size()) != rows * cols) {
        std::ostringstream os;
        os << "field '" << key << "' must be a row-major array of " << rows * cols << " numbers";
        throw InvalidArgument(os.str());
    }
    Matrix M(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) M(r, c) = real(v[static_cast<std::size_t>(r * cols + c)], key);
    return M;
}

Json flatten(const Matrix& M) {
    Json arr = Json::array();
    for (Index r = 0; r < M.rows(); ++r)
        for (Index c = 0; c < M.cols(); ++c) arr.push_back(M(r, c));
    return arr;
}

Vector vector_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) throw InvalidArgument(std::string("field '") + key + "' must be an array");
    Vector out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = real(v[i], key);
    return out;
}

Json entries_to_json(const std::vector<ScheduleEntry>& entries) {
    Json arr = Json::array();
    for (const auto& e : entries) {
        Json item;
        item["k"] = e.k;
        item["i"] = e.channel;
        item["scale"] = e.scale;
        arr.push_back(std::move(item));
    }
    return arr;
}

template <typename Setter>
void entries_from_json(const Json& arr, const char* key, Setter&& set) {
    if (!arr.is_array()) throw InvalidArgument(std::string("field '") + key + "' must be an array");
    for (const auto& item : arr) {
        const Json& k = field(item, "k");
        const Json& i = field(item, "i");
        if (!k.is_number_integer() || !i.is_number_integer()) {
            throw InvalidArgument(std::string(key) + " entries need integer 'k' and 'i'");
        }
        set(k.get<int>(), static_cast<Index>(i.get<long long>()), real(field(item, "scale"), "scale"));
    }
}

Json side_to_json(const SideCertificate& c) {
    Json j;
    j["sparsified"] = c.sparsified;
    j["requested"] = c.requested ? number(*c.requested) : Json(nullptr);
    j["kappa"] = c.kappa;
    j["active_pairs"] = c.active_pairs;
    j["achieved_average"] = number(c.achieved_average);
    j["epsilon_theory"] = number(c.epsilon_theory);
    j["epsilon_empirical"] = number(c.epsilon_empirical);
    j["pass"] = c.pass;
    return j;
}

}  // namespace

Json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

Json system_to_json(const LtiSystem& sys) {
    Json j;
    j["n"] = sys.n();
    j["m"] = sys.m();
    j["p"] = sys.p();
    j["A"] = flatten(sys.A());
    j["B"] = flatten(sys.B());
    j["C"] = flatten(sys.C());
    const auto& labels = sys.labels();
    if (!labels.inputs.empty() || !labels.outputs.empty()) {
        j["labels"] = {{"inputs", labels.inputs}, {"outputs", labels.outputs}};
    }
    return j;
}

LtiSystem system_from_json(const Json& j) {
    const Index n = dimension(j, "n");
    const Index m = dimension(j, "m");
    const Index p = dimension(j, "p");
    ChannelLabels labels;
    if (j.contains("labels")) {
        const Json& l = j.at("labels");
        if (l.contains("inputs")) labels.inputs = l.at("inputs").get<std::vector<std::string>>();
        if (l.contains("outputs")) labels.outputs = l.at("outputs").get<std::vector<std::string>>();
    }
    return LtiSystem(row_major(j, "A", n, n), row_major(j, "B", n, m), row_major(j, "C", p, n), std::move(labels));
}

Json swing_params_to_json(const SwingParams& params) {
    Json j;
    j["inertia"] = std::vector<double>(params.inertia.data(), params.inertia.data() + params.inertia.size());
    j["damping"] = std::vector<double>(params.damping.data(), params.damping.data() + params.damping.size());
    j["coupling"] = flatten(params.coupling);
    j["dt"] = params.dt;
    return j;
}

SwingParams swing_params_from_json(const Json& j) {
    SwingParams params;
    params.inertia = vector_field(j, "inertia");
    params.damping = vector_field(j, "damping");
    const Index g = params.inertia.size();
    params.coupling = row_major(j, "coupling", g, g);
    params.dt = real(field(j, "dt"), "dt");
    params.validate();
    return params;
}

Json schedule_to_json(const Schedule& sched) {
    Json j;
    j["t"] = sched.t();
    j["m"] = sched.m();
    j["p"] = sched.p();
    j["actuators"] = entries_to_json(sched.actuator_entries());
    j["sensors"] = entries_to_json(sched.sensor_entries());
    j["provenance"] = std::string(to_string(sched.provenance()));
    if (sched.budgets()) {
        j["budgets"] = {{"ds", sched.budgets()->sensors}, {"da", sched.budgets()->actuators}};
    }
    return j;
}

Schedule schedule_from_json(const Json& j) {
    const Json& t = field(j, "t");
    if (!t.is_number_integer()) throw InvalidArgument("field 't' must be an integer");
    const Json& prov = field(j, "provenance");
    if (!prov.is_string()) throw InvalidArgument("field 'provenance' must be a string");
    Schedule sched(t.get<int>(), dimension(j, "m"), dimension(j, "p"), provenance_from_string(prov.get<std::string>()));
    entries_from_json(field(j, "actuators"), "actuators",
                      [&](int k, Index i, double s) { sched.set_actuator(k, i, s); });
    entries_from_json(field(j, "sensors"), "sensors", [&](int k, Index i, double s) { sched.set_sensor(k, i, s); });
    if (j.contains("budgets")) {
        const Json& b = j.at("budgets");
        sched.set_budgets({real(field(b, "ds"), "ds"), real(field(b, "da"), "da")});
    }
    return sched;
}

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["provenance"] = std::string(to_string(r.provenance));
    j["t"] = r.t;
    j["n"] = r.n;
    j["sensors"] = side_to_json(r.sensors);
    j["actuators"] = side_to_json(r.actuators);
    Json joint;
    joint["epsilon_theory"] = number(r.joint_epsilon_theory);
    joint["epsilon_empirical"] = number(r.joint_epsilon);
    joint["pass"] = r.joint_pass;
    joint["epsilon_balanced"] = number(r.joint_epsilon_balanced);
    joint["balanced_pass"] = r.joint_balanced_pass;
    j["joint"] = std::move(joint);
    Json hankel;
    hankel["norm_full"] = number(r.hankel_norm_full);
    hankel["norm_scheduled"] = number(r.hankel_norm_scheduled);
    hankel["log_error"] = number(r.hankel_log_error);
    j["hankel"] = std::move(hankel);
    Json metrics = Json::object();
    for (const auto& m : r.metrics) metrics[m.id] = number(m.log_ratio);
    j["metrics"] = std::move(metrics);
    if (r.normalized) {
        const auto& ne = *r.normalized;
        Json nj;
        nj["epsilon_sensors"] = number(ne.sensors);
        nj["epsilon_actuators"] = number(ne.actuators);
        nj["epsilon_joint"] = number(ne.joint);
        nj["epsilon_joint_balanced"] = number(ne.joint_balanced);
        nj["hankel_norm"] = number(ne.hankel_norm);
        nj["hankel_log_error"] = number(ne.hankel_log_error);
        j["normalized"] = std::move(nj);
    }
    j["certified"] = r.certified();
    return j;
}

Json trace_to_json(std::string_view pass, const BarrierTrace& rec) {
    Json j;
    j["pass"] = std::string(pass);
    j["tau"] = rec.tau;
    j["lower"] = number(rec.lower);
    j["upper"] = number(rec.upper);
    j["chosen"] = rec.chosen;
    j["step"] = number(rec.step);
    j["lambda_min"] = number(rec.lambda_min);
    j["lambda_max"] = number(rec.lambda_max);
    return j;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw InvalidArgument("failed writing '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

}  // namespace gramsched::io
