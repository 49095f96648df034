//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;

use digraph_ed_core::dense::{
    apply_two_qubit_dense, commutation_check, controlled_z, edge_gate_matrix,
};
use digraph_ed_core::digraph::{generate, GenParams, GraphKind};
use digraph_ed_core::entanglement::{
    alpha_sweep, build_plus_state, ed_closed_form, ed_per_vertex, ed_total,
    pauli_vector_closed_form,
};
use digraph_ed_core::{Complex64, DirectedGraph, GateParams, PauliVector, PureState};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 7;
const GRAPHS: usize = 200;
const MAX_M: usize = 12;
const CAP: usize = 24;

struct Case {
    graph: DirectedGraph,
    gp: GateParams,
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(worst: f64, tol: f64, what: &str) -> Outcome {
    Outcome {
        passed: worst < tol,
        detail: format!("max {what} = {worst:.3e}, tolerance {tol:.0e}"),
    }
}

fn open_angle(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x = rng.gen_range(0.0..PI);
        if x > 0.0 {
            return x;
        }
    }
}

fn cases() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..GRAPHS)
        .map(|_| {
            let m = rng.gen_range(2..=MAX_M);
            let p = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
            let graph =
                generate(GraphKind::ErdosRenyi, m, &GenParams::with_p(p), rng.gen()).unwrap();
            let gp = GateParams::new(open_angle(&mut rng), open_angle(&mut rng)).unwrap();
            Case { graph, gp }
        })
        .collect()
}

fn plus_state(g: &DirectedGraph, gp: &GateParams) -> PureState {
    build_plus_state(g, gp, CAP).unwrap()
}

fn e_sv(g: &DirectedGraph, gp: &GateParams) -> f64 {
    ed_total(&plus_state(g, gp))
}

fn max_of(xs: impl ParallelIterator<Item = f64>) -> f64 {
    xs.reduce(|| 0.0, f64::max)
}

fn theorem(cases: &[Case]) -> Outcome {
    let worst = max_of(cases.par_iter().map(|c| {
        let cf = ed_closed_form(&c.graph, c.gp.theta()).unwrap();
        (e_sv(&c.graph, &c.gp) - cf).abs()
    }));
    outcome(worst, 1e-10, "|E_sv - E_cf|")
}

fn orientation(cases: &[Case]) -> Outcome {
    let worst = max_of(cases[..50].par_iter().enumerate().map(|(k, c)| {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        let subset: Vec<usize> = (0..c.graph.num_edges())
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let flipped = c.graph.reverse_edges(&subset).unwrap();
        (e_sv(&c.graph, &c.gp) - e_sv(&flipped, &c.gp)).abs()
    }));
    outcome(worst, 1e-12, "change under edge reversal")
}

fn relabeling(cases: &[Case]) -> Outcome {
    let worst = max_of(cases[..50].par_iter().enumerate().map(|(k, c)| {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + k as u64);
        let mut perm: Vec<usize> = (0..c.graph.num_vertices()).collect();
        perm.shuffle(&mut rng);
        let relabeled = c.graph.permute(&perm).unwrap();
        (e_sv(&c.graph, &c.gp) - e_sv(&relabeled, &c.gp)).abs()
    }));
    outcome(worst, 1e-12, "change under relabeling")
}

fn psi_invariance(cases: &[Case]) -> Outcome {
    let worst = max_of(cases.par_iter().enumerate().map(|(k, c)| {
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + k as u64);
        let values: Vec<f64> = (0..10)
            .map(|_| {
                let gp = GateParams::new(c.gp.theta(), rng.gen_range(0.0..2.0 * PI)).unwrap();
                e_sv(&c.graph, &gp)
            })
            .collect();
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    }));
    outcome(worst, 1e-12, "spread over psi")
}

fn maximal_entanglement(cases: &[Case]) -> Outcome {
    let mut graphs: Vec<DirectedGraph> = cases
        .iter()
        .map(|c| c.graph.clone())
        .filter(|g| g.degrees().iter().all(|d| d.total >= 1))
        .collect();
    for m in 3..=MAX_M {
        for kind in [
            GraphKind::Path,
            GraphKind::Cycle,
            GraphKind::StarOut,
            GraphKind::StarIn,
            GraphKind::CompleteDag,
        ] {
            graphs.push(generate(kind, m, &GenParams::default(), 0).unwrap());
        }
    }
    let gp = GateParams::new(FRAC_PI_2, 0.4).unwrap();
    let worst = max_of(graphs.par_iter().map(|g| (e_sv(g, &gp) - 1.0).abs()));
    let empty_exact = (1..=MAX_M).all(|m| e_sv(&DirectedGraph::empty(m).unwrap(), &gp) == 0.0);
    Outcome {
        passed: worst < 1e-12 && empty_exact,
        detail: format!(
            "{} graphs, max |E_sv - 1| = {worst:.3e}; empty graphs exactly 0: {empty_exact}",
            graphs.len()
        ),
    }
}

fn initial_state_optimality() -> Outcome {
    let mut passed = true;
    let mut detail = String::new();
    for psi in [0.0, 0.7, 2.1] {
        let r = alpha_sweep(&GateParams::new(FRAC_PI_2, psi).unwrap(), 101).unwrap();
        passed &=
            r.argmax_ed == 0.5 && r.argmax_entropy == 0.5 && r.argmin_hs == 0.5 && !r.degenerate;
        detail = format!(
            "argmax E = {}, argmax S = {}, argmin D_HS = {}",
            r.argmax_ed, r.argmax_entropy, r.argmin_hs
        );
    }
    Outcome { passed, detail }
}

fn per_vertex_law(cases: &[Case]) -> Outcome {
    let worst = max_of(cases.par_iter().map(|c| {
        let state = plus_state(&c.graph, &c.gp);
        c.graph
            .degrees()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let want = 1.0 - c.gp.theta().cos().powi(2 * d.total as i32);
                (ed_per_vertex(&state, i).unwrap() - want).abs()
            })
            .fold(0.0, f64::max)
    }));
    outcome(worst, 1e-10, "|E_i - (1 - cos^2d theta)|")
}

fn gate_correctness() -> Outcome {
    let cz = edge_gate_matrix(&GateParams::new(FRAC_PI_2, FRAC_PI_2).unwrap())
        .sub(&controlled_z())
        .max_abs();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let comm = (0..20)
        .map(|_| {
            let gp = GateParams::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)).unwrap();
            commutation_check(&gp)
        })
        .fold(0.0, f64::max);
    Outcome {
        passed: cz < 1e-15 && comm < 1e-14,
        detail: format!("CZ deviation = {cz:.3e} (1e-15), max commutator = {comm:.3e} (1e-14)"),
    }
}

fn random_state(rng: &mut ChaCha8Rng, m: usize) -> PureState {
    let raw: Vec<Complex64> = (0..1usize << m)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    PureState::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for m in 2..=8 {
        for _ in 0..10 {
            let gp = GateParams::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)).unwrap();
            let a = rng.gen_range(0..m);
            let b = (a + rng.gen_range(1..m)) % m;
            let mut fast = random_state(&mut rng, m);
            let dense = apply_two_qubit_dense(&fast, a, b, &edge_gate_matrix(&gp)).unwrap();
            fast.apply_edge_gate((a, b), &gp).unwrap();
            for (x, y) in fast.amplitudes().iter().zip(&dense) {
                worst = worst.max((x - y).norm());
            }
        }
    }
    outcome(worst, 1e-14, "amplitude difference")
}

fn star(d_out: usize, d_in: usize) -> DirectedGraph {
    let mut edges: Vec<(usize, usize)> = (1..=d_out).map(|j| (0, j)).collect();
    edges.extend((d_out + 1..=d_out + d_in).map(|j| (j, 0)));
    DirectedGraph::new(d_out + d_in + 1, edges).unwrap()
}

fn bloch(amp: f64, phi: f64) -> PauliVector {
    PauliVector::new(amp * phi.cos(), -amp * phi.sin(), 0.0)
}

fn pauli_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pure: f64 = 0.0;
    for d in 1..=6 {
        let gp = GateParams::new(open_angle(&mut rng), open_angle(&mut rng)).unwrap();
        let ct = gp.theta().cos().powi(d as i32);
        let v_out = plus_state(&star(d, 0), &gp).pauli_expectation(0).unwrap();
        let v_in = plus_state(&star(0, d), &gp).pauli_expectation(0).unwrap();
        pure = pure
            .max(v_out.max_abs_diff(&bloch(ct, d as f64 * gp.psi())))
            .max(v_in.max_abs_diff(&bloch(ct, d as f64 * gp.theta())));
    }
    // mixed hub: phase d_out psi + d_in theta
    let mut mixed: f64 = 0.0;
    for d_out in 1..=3 {
        for d_in in 1..=3 {
            let gp = GateParams::new(open_angle(&mut rng), open_angle(&mut rng)).unwrap();
            let v = plus_state(&star(d_out, d_in), &gp)
                .pauli_expectation(0)
                .unwrap();
            mixed = mixed.max(v.max_abs_diff(&pauli_vector_closed_form(d_out, d_in, &gp)));
        }
    }
    Outcome {
        passed: pure < 1e-10 && mixed < 1e-10,
        detail: format!("pure stars {pure:.3e}, mixed stars {mixed:.3e} (1e-10)"),
    }
}

fn main() -> ExitCode {
    let cases = cases();
    let results = [
        ("1 theorem reproduction", theorem(&cases)),
        ("2 orientation insensitivity", orientation(&cases)),
        ("3 relabeling invariance", relabeling(&cases)),
        ("4 psi invariance", psi_invariance(&cases)),
        ("5 maximal entanglement", maximal_entanglement(&cases)),
        ("6 initial-state optimality", initial_state_optimality()),
        ("7 per-vertex law", per_vertex_law(&cases)),
        ("8 gate correctness", gate_correctness()),
        ("9 dense cross-validation", cross_validation()),
        ("10 Pauli-vector closed forms", pauli_forms()),
    ];
    let mut all = true;
    for (name, r) in &results {
        println!(
            "{} criterion {name}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        );
        all &= r.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
