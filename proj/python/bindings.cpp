// Python bindings for the core solvers and the pipeline.

#include <pybind11/pybind11.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>

#include "p2pmarket/io.hpp"
#include "p2pmarket/pipeline.hpp"
#include "p2pmarket/sweep.hpp"

namespace py = pybind11;
using namespace p2pmarket;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Game-theoretic engine for P2P-era ISP/CP market states, "
              "Nash bargaining and coalition profit split";

    static py::exception<Error> engine_error(m, "EngineError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            engine_error(e.what());
        }
    });

    py::class_<MarketParameters>(m, "MarketParameters")
        .def(py::init<double, double, double>(), py::arg("xi_cp"),
             py::arg("xi_user"), py::arg("b_isp"))
        .def_readonly("xi_cp", &MarketParameters::xi_cp)
        .def_readonly("xi_user", &MarketParameters::xi_user)
        .def_readonly("b_isp", &MarketParameters::b_isp)
        .def_property_readonly("c", &MarketParameters::c)
        .def_property_readonly("d", &MarketParameters::d)
        .def_property_readonly("e", &MarketParameters::e);

    py::class_<ReferenceParams>(m, "ReferenceParams")
        .def(py::init([](double k1, double k2, double k3, double k4, double k5) {
                 return ReferenceParams{k1, k2, k3, k4, k5};
             }),
             py::arg("k1") = 1.0, py::arg("k2") = 0.2, py::arg("k3") = 100.0,
             py::arg("k4") = 0.4, py::arg("k5") = 5.0)
        .def_readwrite("k1", &ReferenceParams::k1)
        .def_readwrite("k2", &ReferenceParams::k2)
        .def_readwrite("k3", &ReferenceParams::k3)
        .def_readwrite("k4", &ReferenceParams::k4)
        .def_readwrite("k5", &ReferenceParams::k5);

    py::class_<FunctionFamily>(m, "FunctionFamily")
        .def_static("reference", &FunctionFamily::reference, py::arg("b_isp"),
                    py::arg("params") = ReferenceParams{})
        .def_property_readonly("capacity", &FunctionFamily::capacity)
        .def("content_cost", &FunctionFamily::content_cost)
        .def("isp_cost", &FunctionFamily::isp_cost)
        .def("ad_revenue", &FunctionFamily::ad_revenue)
        .def("experience", &FunctionFamily::experience)
        .def("marginal_experience", &FunctionFamily::marginal_experience)
        .def("marginal_experience_inverse",
             &FunctionFamily::marginal_experience_inverse);

    py::class_<TrafficProfile>(m, "TrafficProfile")
        .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
        .def_readonly("alpha", &TrafficProfile::alpha)
        .def_readonly("beta", &TrafficProfile::beta);

    py::class_<AccelerationModel>(m, "AccelerationModel")
        .def(py::init([](double beta0, double a0, double beta1, double a1) {
                 return AccelerationModel{beta0, a0, beta1, a1};
             }),
             py::arg("beta0") = 0.3, py::arg("a0") = 4.0,
             py::arg("beta1") = 1.0, py::arg("a1") = 1.0)
        .def("factor", &AccelerationModel::factor);

    m.def("acceleration_factor", &acceleration_factor, py::arg("profile"),
          py::arg("model") = AccelerationModel{});
    m.def("accelerated_experience", &accelerated_experience);
    m.def("alleviated_cost", &alleviated_cost);

    py::class_<UtilityTriple>(m, "UtilityTriple")
        .def_readonly("isp", &UtilityTriple::isp)
        .def_readonly("cp", &UtilityTriple::cp)
        .def_readonly("user", &UtilityTriple::user)
        .def("__repr__", [](const UtilityTriple& u) {
            return "(U_isp=" + format_fixed(u.isp, 4) +
                   ", U_cp=" + format_fixed(u.cp, 4) +
                   ", U_user=" + format_fixed(u.user, 4) + ")";
        });

    py::class_<BaselineEquilibrium>(m, "BaselineEquilibrium")
        .def_readonly("v_star", &BaselineEquilibrium::v_star)
        .def_readonly("p_b", &BaselineEquilibrium::p_b)
        .def_readonly("p_s", &BaselineEquilibrium::p_s)
        .def_readonly("tau", &BaselineEquilibrium::tau)
        .def_readonly("b_user", &BaselineEquilibrium::b_user)
        .def_readonly("b_cp", &BaselineEquilibrium::b_cp)
        .def_readonly("utilities", &BaselineEquilibrium::utilities)
        .def_readonly("second_order", &BaselineEquilibrium::second_order)
        .def_readonly("second_order_ok", &BaselineEquilibrium::second_order_ok);

    py::class_<BaselineOptions>(m, "BaselineOptions")
        .def(py::init<>())
        .def_readwrite("scan_points", &BaselineOptions::scan_points)
        .def_readwrite("root_tol", &BaselineOptions::root_tol);

    m.def("phi1", &phi1);
    m.def("phi2", &phi2);
    m.def("solve_state0", &solve_state0, py::arg("params"), py::arg("family"),
          py::arg("options") = BaselineOptions{});
    m.def("solve_state0_unique", &solve_state0_unique, py::arg("params"),
          py::arg("family"), py::arg("options") = BaselineOptions{},
          py::arg("index") = 0);

    py::enum_<StateLabel>(m, "StateLabel")
        .value("S0", StateLabel::S0)
        .value("S1", StateLabel::S1)
        .value("S2", StateLabel::S2)
        .value("S3", StateLabel::S3);

    py::class_<P2PContext>(m, "P2PContext")
        .def(py::init<const MarketParameters&, const FunctionFamily&,
                      const BaselineEquilibrium&, const TrafficProfile&,
                      const AccelerationModel&>(),
             py::arg("params"), py::arg("family"), py::arg("baseline"),
             py::arg("profile"), py::arg("accel") = AccelerationModel{})
        .def_readonly("v_cs", &P2PContext::v_cs)
        .def_readonly("a", &P2PContext::a)
        .def_readonly("v_tilde", &P2PContext::v_tilde)
        .def_readonly("cap", &P2PContext::cap);

    py::class_<StateOutcome>(m, "StateOutcome")
        .def_readonly("label", &StateOutcome::label)
        .def_readonly("v_p2p", &StateOutcome::v_p2p)
        .def_readonly("v_total", &StateOutcome::v_total)
        .def_readonly("utilities", &StateOutcome::utilities);

    py::class_<MaximizeOptions>(m, "MaximizeOptions")
        .def(py::init<>())
        .def_readwrite("x_tol", &MaximizeOptions::x_tol)
        .def_readwrite("scan_points", &MaximizeOptions::scan_points);

    m.def("baseline_outcome", &baseline_outcome);
    m.def("user_utility_s1", &user_utility_s1);
    m.def("user_utility_s2", &user_utility_s2);
    m.def("solve_state1", &solve_state1, py::arg("ctx"),
          py::arg("options") = MaximizeOptions{});
    m.def("solve_state2", &solve_state2, py::arg("ctx"),
          py::arg("options") = MaximizeOptions{});

    py::enum_<CpAction>(m, "CpAction")
        .value("no_p2p", CpAction::no_p2p)
        .value("adopt_p2p", CpAction::adopt_p2p);
    py::enum_<IspAction>(m, "IspAction")
        .value("flat", IspAction::flat)
        .value("usage_based", IspAction::usage_based);

    py::class_<LeafPayoffs>(m, "LeafPayoffs")
        .def(py::init([](double u_cp, double u_isp) {
                 return LeafPayoffs{u_cp, u_isp};
             }),
             py::arg("u_cp"), py::arg("u_isp"))
        .def_readonly("u_cp", &LeafPayoffs::u_cp)
        .def_readonly("u_isp", &LeafPayoffs::u_isp);

    py::class_<GameTree>(m, "GameTree")
        .def(py::init([](LeafPayoffs no_p2p, LeafPayoffs p2p_flat,
                         LeafPayoffs p2p_usage) {
                 return GameTree{no_p2p, p2p_flat, p2p_usage};
             }),
             py::arg("no_p2p"), py::arg("p2p_flat"), py::arg("p2p_usage"))
        .def_readonly("no_p2p", &GameTree::no_p2p)
        .def_readonly("p2p_flat", &GameTree::p2p_flat)
        .def_readonly("p2p_usage", &GameTree::p2p_usage);

    py::class_<InductionResult>(m, "InductionResult")
        .def_readonly("cp", &InductionResult::cp)
        .def_readonly("isp", &InductionResult::isp)
        .def_readonly("payoff", &InductionResult::payoff);

    py::class_<TransitionReport>(m, "TransitionReport")
        .def_readonly("t1", &TransitionReport::t1)
        .def_readonly("t2", &TransitionReport::t2)
        .def_readonly("t3", &TransitionReport::t3)
        .def_readonly("cycle", &TransitionReport::cycle)
        .def_readonly("final_state", &TransitionReport::final_state)
        .def_readonly("spne", &TransitionReport::spne)
        .def_readonly("starting_point", &TransitionReport::starting_point);

    m.def("computed_tree", &computed_tree);
    m.def("backward_induction", &backward_induction);
    m.def("leaves_differ", &leaves_differ, py::arg("a"), py::arg("b"),
          py::arg("tol") = 1e-3);
    m.def("evaluate_transitions", &evaluate_transitions);

    py::class_<DiscountPair>(m, "DiscountPair")
        .def(py::init<double, double>(), py::arg("gamma_isp"),
             py::arg("gamma_pcp"))
        .def_readonly("gamma_isp", &DiscountPair::gamma_isp)
        .def_readonly("gamma_pcp", &DiscountPair::gamma_pcp);

    py::class_<GroupProfit>(m, "GroupProfit")
        .def_readonly("u_total", &GroupProfit::u_total)
        .def_readonly("v_p2p", &GroupProfit::v_p2p)
        .def_readonly("u_isp_pre", &GroupProfit::u_isp_pre)
        .def_readonly("u_cp_pre", &GroupProfit::u_cp_pre)
        .def_readonly("u_user", &GroupProfit::u_user);

    py::class_<StackelbergOptions>(m, "StackelbergOptions")
        .def(py::init<>())
        .def_readwrite("coarse_n", &StackelbergOptions::coarse_n)
        .def_readwrite("refine_levels", &StackelbergOptions::refine_levels)
        .def_readwrite("inner", &StackelbergOptions::inner);

    py::class_<CooperativeOutcome>(m, "CooperativeOutcome")
        .def_readonly("discounts", &CooperativeOutcome::discounts)
        .def_readonly("v_p2p_s3", &CooperativeOutcome::v_p2p_s3)
        .def_readonly("u_total_s3", &CooperativeOutcome::u_total_s3)
        .def_readonly("u_isp_pre", &CooperativeOutcome::u_isp_pre)
        .def_readonly("u_cp_pre", &CooperativeOutcome::u_cp_pre)
        .def_readonly("u_user_s3", &CooperativeOutcome::u_user_s3)
        .def_readonly("starting_point", &CooperativeOutcome::starting_point)
        .def_readonly("u_isp_s3", &CooperativeOutcome::u_isp_s3)
        .def_readonly("u_cp_s3", &CooperativeOutcome::u_cp_s3)
        .def_readonly("transfer_r", &CooperativeOutcome::transfer_r);

    m.def("user_utility_s3", &user_utility_s3);
    m.def("group_profit", &group_profit, py::arg("ctx"), py::arg("discounts"),
          py::arg("options") = MaximizeOptions{});
    m.def("solve_stackelberg", &solve_stackelberg, py::arg("ctx"),
          py::arg("options") = StackelbergOptions{});
    m.def("nash_bargaining_split", &nash_bargaining_split, py::arg("u_total"),
          py::arg("start"));
    m.def("transfer", &transfer, py::arg("pre"), py::arg("post"));
    m.def("bargain", &bargain, py::arg("ctx"), py::arg("starting_point"),
          py::arg("options") = StackelbergOptions{});
    m.def("improvement_percent", &improvement_percent);

    py::class_<PcpTraffic>(m, "PcpTraffic")
        .def(py::init<std::vector<std::vector<double>>, std::vector<double>>(),
             py::arg("user_to_user"), py::arg("server_to_user"))
        .def_readonly("user_to_user", &PcpTraffic::user_to_user)
        .def_readonly("server_to_user", &PcpTraffic::server_to_user)
        .def("total", &PcpTraffic::total);

    py::class_<IspUserSide>(m, "IspUserSide")
        .def(py::init([](double b, double v_cs) {
                 return IspUserSide{b, v_cs};
             }),
             py::arg("flat_bandwidth"), py::arg("background_volume"))
        .def_readonly("flat_bandwidth", &IspUserSide::flat_bandwidth)
        .def_readonly("background_volume", &IspUserSide::background_volume);

    py::class_<WeightResult>(m, "WeightResult")
        .def_readonly("weights", &WeightResult::weights)
        .def_readonly("warnings", &WeightResult::warnings);

    py::class_<CoalitionLedger>(m, "CoalitionLedger")
        .def_readonly("phi", &CoalitionLedger::phi)
        .def_readonly("psi", &CoalitionLedger::psi)
        .def_readonly("pcp_payments", &CoalitionLedger::pcp_payments)
        .def_readonly("isp_receipts", &CoalitionLedger::isp_receipts)
        .def_readonly("warnings", &CoalitionLedger::warnings);

    m.def("pcp_weights", &pcp_weights);
    m.def("aggregate", &aggregate);
    m.def("isp_p2p_volume", &isp_p2p_volume);
    m.def("isp_weights", &isp_weights, py::arg("p2p_volumes"), py::arg("sides"),
          py::arg("params"), py::arg("profile"), py::arg("v_p2p"),
          py::arg("v_s0"));
    m.def("synthesize_uniform_traffic", &synthesize_uniform_traffic);
    m.def("distribute", &distribute);
    m.def("proportional_sides", &proportional_sides);

    py::class_<Scenario>(m, "Scenario").def(py::init<>());
    m.def("load_scenario", &load_scenario);
    m.def("parse_scenario", &parse_scenario, py::arg("text"),
          py::arg("base_dir") = ".");

    py::class_<PipelineReport>(m, "PipelineReport")
        .def_readonly("baseline", &PipelineReport::baseline)
        .def_readonly("root_count", &PipelineReport::root_count)
        .def_readonly("s0", &PipelineReport::s0)
        .def_readonly("s1", &PipelineReport::s1)
        .def_readonly("s2", &PipelineReport::s2)
        .def_readonly("transitions", &PipelineReport::transitions)
        .def_readonly("cooperative", &PipelineReport::cooperative)
        .def_readonly("improvements", &PipelineReport::improvements)
        .def_readonly("ledger", &PipelineReport::ledger)
        .def_readonly("isp_volumes", &PipelineReport::isp_volumes)
        .def_readonly("coalition_v_p2p", &PipelineReport::coalition_v_p2p)
        .def_readonly("notes", &PipelineReport::notes);

    m.def("run_pipeline", &run_pipeline);
    m.def("format_report", &format_report);
}
