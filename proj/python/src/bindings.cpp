#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "faasim/metrics.hpp"
#include "faasim/scenario.hpp"
#include "faasim/simulation.hpp"
#include "faasim/sweep.hpp"

namespace py = pybind11;
using namespace faasim;

namespace {

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["scenario"] = s.scenario;
    d["seed"] = s.seed;
    d["duration_s"] = s.duration_s;
    d["warmup_s"] = s.warmup_s;
    d["issued"] = s.issued;
    d["completed"] = s.completed;
    d["timed_out"] = s.timed_out;
    d["dropped"] = s.dropped;
    d["in_flight"] = s.in_flight;
    d["retries"] = s.retries;
    d["drop_events_ingress"] = s.drop_events_ingress;
    d["drop_events_pod"] = s.drop_events_pod;
    d["conservation_holds"] = s.conservation_holds();
    d["measured_completions"] = s.measured_completions;
    d["throughput_rps"] = s.throughput_rps;
    d["throughput_interval_mean"] = s.throughput_interval_mean;
    d["throughput_interval_std"] = s.throughput_interval_std;
    d["mean_latency_us"] = s.mean_latency_us;
    d["p50_us"] = s.p50_us;
    d["p90_us"] = s.p90_us;
    d["p99_us"] = s.p99_us;
    d["p999_us"] = s.p999_us;
    d["mean_in_system"] = s.mean_in_system;
    d["peak_ready_pods"] = s.peak_ready_pods;
    d["total_scrape_bytes"] = s.total_scrape_bytes;
    d["events_processed"] = s.events_processed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_faasim, m) {
    m.doc() = "Discrete-event simulator of serverless platform dynamics";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ScenarioError>(m, "ScenarioError");

    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("name", [](const Scenario& s) { return s.name; })
        .def_property_readonly("seed", [](const Scenario& s) { return s.seed; })
        .def_property_readonly("duration_s", [](const Scenario& s) { return s.duration.seconds(); })
        .def("with_seed",
             [](const Scenario& s, std::uint64_t seed) {
                 Scenario copy = s;
                 copy.seed = seed;
                 return copy;
             })
        .def("with_connections",
             [](const Scenario& s, std::uint32_t n) {
                 Scenario copy = s;
                 copy.workload.connections = n;
                 return copy;
             })
        .def("to_json", &Scenario::to_json, py::arg("indent") = 2)
        .def("__repr__", [](const Scenario& s) {
            return "<Scenario '" + s.name + "' archetype=" + archetype_name(s.archetype) + ">";
        });

    py::class_<TimelineSample>(m, "TimelineSample")
        .def_property_readonly("t_s", [](const TimelineSample& t) { return t.t.seconds(); })
        .def_readonly("ready_pods", &TimelineSample::ready_pods)
        .def_readonly("pending_pods", &TimelineSample::pending_pods)
        .def_readonly("mean_cpu", &TimelineSample::mean_cpu)
        .def_readonly("total_mem_bytes", &TimelineSample::total_mem_bytes)
        .def_readonly("throughput_rps", &TimelineSample::throughput_rps)
        .def_readonly("scrape_bytes", &TimelineSample::scrape_bytes);

    py::class_<LatencyHistogram>(m, "LatencyHistogram")
        .def(py::init<>())
        .def("record", [](LatencyHistogram& h, double us) { h.record(SimTime{static_cast<std::int64_t>(us)}); })
        .def("percentile_us",
             [](const LatencyHistogram& h, double p) {
                 return static_cast<double>(h.percentile(p).micros);
             })
        .def_property_readonly("total", &LatencyHistogram::total)
        .def("buckets", [](const LatencyHistogram& h) {
            py::list out;
            for (std::size_t i = 0; i < h.bucket_count(); ++i) {
                if (h.count_at(i) == 0) continue;
                out.append(py::make_tuple(h.bucket_low_us(i), h.bucket_high_us(i), h.count_at(i)));
            }
            return out;
        });

    py::class_<ResultBundle>(m, "ResultBundle")
        .def_property_readonly("summary", [](const ResultBundle& b) { return summary_dict(b.summary); })
        .def_property_readonly("timeline", [](const ResultBundle& b) { return b.timeline; })
        .def_property_readonly("histogram", [](const ResultBundle& b) { return b.histogram; })
        .def("summary_json", &ResultBundle::summary_json, py::arg("indent") = 2)
        .def("timeline_csv", &ResultBundle::timeline_csv)
        .def("histogram_csv", &ResultBundle::histogram_csv)
        .def("serialize", &ResultBundle::serialize);

    m.def("load_scenario", &load_scenario, py::arg("path"),
          "Parse and validate a scenario file");
    m.def("scenario_from_json", &scenario_from_json, py::arg("text"));
    m.def(
        "run_scenario", [](const Scenario& s) { return run_scenario(s); }, py::arg("scenario"),
        py::call_guard<py::gil_scoped_release>(), "Run one scenario to completion");
    m.def(
        "run_file",
        [](const std::string& path) {
            Scenario s = load_scenario(path);
            py::gil_scoped_release release;
            return run_scenario(s);
        },
        py::arg("path"));
    m.def(
        "sweep",
        [](const Scenario& base, const std::vector<std::uint64_t>& seeds,
           const std::vector<std::uint32_t>& concurrencies) {
            std::vector<SweepCell> cells;
            {
                py::gil_scoped_release release;
                cells = run_sweep(base, seeds, concurrencies);
            }
            py::list out;
            for (const auto& c : cells) {
                py::dict d;
                d["concurrency"] = c.concurrency;
                d["runs"] = c.runs;
                d["throughput_mean"] = c.throughput_mean;
                d["throughput_std"] = c.throughput_std;
                d["p99_mean_us"] = c.p99_mean_us;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("seeds"), py::arg("concurrencies"));
}
