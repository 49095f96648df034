//! Seeded verification battery over random digraphs.
//!
//! Every check compares a statevector result with either the degree-only
//! closed form or a transformed copy of the same graph. Graph cases are
//! independent and run in parallel; results are gathered in case order so the
//! printed report is identical for identical configurations.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use digraph_ed_core::dense::{
    apply_two_qubit_dense, commutation_check, controlled_z, edge_gate_matrix,
};
use digraph_ed_core::digraph::{generate, GenParams, GraphKind};
use digraph_ed_core::entanglement::{
    alpha_sweep, build_plus_state, ed_closed_form, ed_per_vertex, ed_total, hs_distance,
    pauli_vector_closed_form, per_vertex_closed_form,
};
use digraph_ed_core::{Complex64, DensityMatrix1Q, DirectedGraph, GateParams, PureState};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const THEOREM_TOL: f64 = 1e-10;
pub const INVARIANCE_TOL: f64 = 1e-12;
pub const MAX_ENTANGLEMENT_TOL: f64 = 1e-12;
pub const PER_VERTEX_TOL: f64 = 1e-10;
pub const CZ_TOL: f64 = 1e-15;
pub const COMMUTATOR_TOL: f64 = 1e-14;
pub const CROSS_VALIDATION_TOL: f64 = 1e-14;
pub const PAULI_TOL: f64 = 1e-10;
pub const EDGE_ORDER_TOL: f64 = 1e-15;
pub const BLOCH_CONSISTENCY_TOL: f64 = 1e-12;

const ORIENTATION_CASES: usize = 50;
const RELABEL_CASES: usize = 50;
const PSI_CASES: usize = 10;
const PSI_DRAWS: usize = 10;
const GATE_DRAWS: usize = 20;
const ALPHA_GRID: usize = 101;
const MAX_STAR_DEGREE: usize = 6;
const EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub graphs: usize,
    pub max_m: usize,
    /// Added to every closed-form value; nonzero only to prove the suite can fail.
    pub cf_perturbation: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            graphs: 200,
            max_m: 12,
            cf_perturbation: 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub graph: DirectedGraph,
    pub gp: GateParams,
    pub seed: u64,
}

fn open_angle(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x = rng.gen_range(0.0..PI);
        if x > 0.0 {
            return x;
        }
    }
}

/// Erdos-Renyi digraphs with `M` uniform in `[2, max_m]`, `p` drawn from
/// `{0.2, 0.5, 0.8}`, and angles uniform in `(0, pi)`.
pub fn suite_cases(seed: u64, graphs: usize, max_m: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..graphs)
        .map(|_| {
            let m = rng.gen_range(2..=max_m.max(2));
            let p = EDGE_PROBABILITIES[rng.gen_range(0..EDGE_PROBABILITIES.len())];
            let graph = generate(GraphKind::ErdosRenyi, m, &GenParams::with_p(p), rng.gen())
                .expect("erdos_renyi parameters are valid");
            let gp =
                GateParams::new(open_angle(&mut rng), open_angle(&mut rng)).expect("finite angles");
            Case {
                graph,
                gp,
                seed: rng.gen(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn max_check(name: &'static str, worst: f64, tol: f64, what: &str) -> Check {
    Check {
        name,
        passed: worst < tol,
        detail: format!("max {what} = {worst:.3e} (tolerance {tol:.0e})"),
    }
}

/// The CLI enforces the qubit cap before the suite starts.
fn plus_state(g: &DirectedGraph, gp: &GateParams) -> PureState {
    build_plus_state(g, gp, g.num_vertices()).expect("valid graph within cap")
}

fn plus_ed(g: &DirectedGraph, gp: &GateParams) -> f64 {
    ed_total(&plus_state(g, gp))
}

#[derive(Default)]
struct CaseOutcome {
    theorem: f64,
    per_vertex: f64,
    edge_order: f64,
    orientation: Option<f64>,
    relabel: Option<f64>,
    psi_spread: Option<f64>,
    max_entanglement: Option<f64>,
    degree_swap: Option<f64>,
    bloch: f64,
}

fn run_case(index: usize, case: &Case, perturbation: f64) -> CaseOutcome {
    let g = &case.graph;
    let gp = &case.gp;
    let mut rng = ChaCha8Rng::seed_from_u64(case.seed);
    let state = plus_state(g, gp);
    let sv = ed_total(&state);
    let mut out = CaseOutcome::default();

    let cf = ed_closed_form(g, gp.theta()).expect("suite graphs have no antiparallel pairs");
    out.theorem = (sv - (cf + perturbation)).abs();

    for (i, d) in g.degrees().iter().enumerate() {
        let e = ed_per_vertex(&state, i).expect("vertex in range");
        let law = per_vertex_closed_form(d.total, gp.theta()) + perturbation;
        out.per_vertex = out.per_vertex.max((e - law).abs());

        let traced = state.reduced_density_1q(i).expect("vertex in range");
        let bloch = DensityMatrix1Q::from_bloch(&state.pauli_expectation(i).expect("in range"));
        out.bloch = out.bloch.max(traced.max_abs_diff(&bloch));
    }

    let shuffled = plus_state(&g.shuffled_edges(&mut rng), gp);
    out.edge_order = state.max_abs_diff(&shuffled);

    if index < ORIENTATION_CASES {
        let subset: Vec<usize> = (0..g.num_edges()).filter(|_| rng.gen_bool(0.5)).collect();
        let flipped = g
            .reverse_edges(&subset)
            .expect("reversal keeps a valid graph");
        out.orientation = Some((plus_ed(&flipped, gp) - sv).abs());
    }
    if index < RELABEL_CASES {
        let mut perm: Vec<usize> = (0..g.num_vertices()).collect();
        perm.shuffle(&mut rng);
        let relabeled = g.permute(&perm).expect("shuffle is a bijection");
        out.relabel = Some((plus_ed(&relabeled, gp) - sv).abs());
    }
    if index < PSI_CASES {
        let values: Vec<f64> = (0..PSI_DRAWS)
            .map(|_| {
                let psi = open_angle(&mut rng);
                plus_ed(g, &GateParams::new(gp.theta(), psi).expect("finite"))
            })
            .collect();
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        out.psi_spread = Some(hi - lo);
    }
    if g.degrees().iter().all(|d| d.total >= 1) {
        let quarter = GateParams::new(FRAC_PI_2, gp.psi()).expect("finite");
        out.max_entanglement = Some((plus_ed(g, &quarter) - 1.0).abs());
    }
    if g.num_edges() >= 2 {
        // (a,b),(c,d) -> (a,d),(c,b) keeps every in- and out-degree
        let i = rng.gen_range(0..g.num_edges());
        let j = (i + rng.gen_range(1..g.num_edges())) % g.num_edges();
        let mut edges = g.edges().to_vec();
        let ((a, b), (c, d)) = (edges[i], edges[j]);
        edges[i] = (a, d);
        edges[j] = (c, b);
        if let Ok(swapped) = DirectedGraph::new(g.num_vertices(), edges) {
            out.degree_swap = Some((plus_ed(&swapped, gp) - sv).abs());
        }
    }
    out
}

fn fold_max<I: Iterator<Item = f64>>(it: I) -> (f64, usize) {
    it.fold((0.0, 0), |(m, n), x| (m.max(x), n + 1))
}

fn random_state(rng: &mut ChaCha8Rng, m: usize) -> PureState {
    let raw: Vec<Complex64> = (0..1usize << m)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    PureState::from_amplitudes(raw.into_iter().map(|z| z / norm).collect())
        .expect("normalized by construction")
}

fn gate_checks(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let cz_gp = GateParams::new(FRAC_PI_2, FRAC_PI_2).expect("finite");
    let cz = edge_gate_matrix(&cz_gp).sub(&controlled_z()).max_abs();
    let commutator = (0..GATE_DRAWS)
        .map(|_| {
            let gp =
                GateParams::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)).expect("finite");
            commutation_check(&gp)
        })
        .fold(0.0, f64::max);
    let mut cross: f64 = 0.0;
    for m in 2..=8 {
        for _ in 0..4 {
            let s = random_state(rng, m);
            let a = rng.gen_range(0..m);
            let b = (a + rng.gen_range(1..m)) % m;
            let gp =
                GateParams::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)).expect("finite");
            let dense = apply_two_qubit_dense(&s, a, b, &edge_gate_matrix(&gp)).expect("valid");
            let mut fast = s;
            fast.apply_edge_gate((a, b), &gp).expect("valid");
            for (x, y) in fast.amplitudes().iter().zip(&dense) {
                cross = cross.max((x - y).norm());
            }
        }
    }
    vec![
        max_check("controlled_z", cz, CZ_TOL, "|U(pi/2, pi/2) - CZ|"),
        max_check(
            "commutation",
            commutator,
            COMMUTATOR_TOL,
            "commutator entry",
        ),
        max_check(
            "dense_cross_validation",
            cross,
            CROSS_VALIDATION_TOL,
            "amplitude difference",
        ),
    ]
}

/// Hub 0 with `d_out` outgoing and `d_in` incoming spokes.
fn hub(d_out: usize, d_in: usize) -> DirectedGraph {
    let mut edges: Vec<(usize, usize)> = (1..=d_out).map(|j| (0, j)).collect();
    edges.extend((d_out + 1..=d_out + d_in).map(|j| (j, 0)));
    DirectedGraph::new(d_out + d_in + 1, edges).expect("hub graph is valid")
}

fn pauli_check(rng: &mut ChaCha8Rng) -> Check {
    let mut worst: f64 = 0.0;
    let mut shapes = Vec::new();
    for d in 1..=MAX_STAR_DEGREE {
        shapes.push((d, 0));
        shapes.push((0, d));
    }
    for d_out in 1..=3 {
        for d_in in 1..=3 {
            shapes.push((d_out, d_in));
        }
    }
    for (d_out, d_in) in shapes {
        let gp = GateParams::new(open_angle(rng), open_angle(rng)).expect("finite");
        let v = build_plus_state(&hub(d_out, d_in), &gp, 24)
            .expect("small graph")
            .pauli_expectation(0)
            .expect("hub exists");
        worst = worst.max(v.max_abs_diff(&pauli_vector_closed_form(d_out, d_in, &gp)));
    }
    max_check(
        "pauli_vector_closed_form",
        worst,
        PAULI_TOL,
        "component difference",
    )
}

fn alpha_checks() -> Vec<Check> {
    let gp = GateParams::new(FRAC_PI_2, FRAC_PI_2).expect("finite");
    let sweep = alpha_sweep(&gp, ALPHA_GRID).expect("grid is valid");
    let at_half = sweep.argmax_ed == 0.5 && sweep.argmax_entropy == 0.5 && sweep.argmin_hs == 0.5;
    let first_half: Vec<_> = sweep.samples.iter().filter(|s| s.param <= 0.5).collect();
    let monotone = first_half.windows(2).all(|w| {
        w[1].ed > w[0].ed && w[1].entropy > w[0].entropy && w[1].hs_distance < w[0].hs_distance
    });
    vec![
        Check {
            name: "initial_state_optimality",
            passed: at_half,
            detail: format!(
                "argmax E = {}, argmax S = {}, argmin D_HS = {} (grid {ALPHA_GRID})",
                sweep.argmax_ed, sweep.argmax_entropy, sweep.argmin_hs
            ),
        },
        Check {
            name: "entropy_hs_consistency",
            passed: monotone,
            detail: format!(
                "{} grid steps on t in [0, 0.5]",
                first_half.len().saturating_sub(1)
            ),
        },
    ]
}

fn hs_zero_check(rng: &mut ChaCha8Rng) -> Check {
    let mixed_ok = hs_distance(&DensityMatrix1Q::maximally_mixed()) == 0.0;
    let mut others_ok = true;
    for _ in 0..200 {
        let v = digraph_ed_core::PauliVector::new(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        );
        let rho = DensityMatrix1Q::from_bloch(&v);
        let far = rho.max_abs_diff(&DensityMatrix1Q::maximally_mixed()) >= 1e-12;
        others_ok &= far == (hs_distance(&rho) > 0.0);
    }
    Check {
        name: "hs_zero_iff_mixed",
        passed: mixed_ok && others_ok,
        detail: "D_HS(I/2) = 0 and D_HS > 0 away from I/2".into(),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let cases = suite_cases(cfg.seed, cfg.graphs, cfg.max_m);
    let outcomes: Vec<CaseOutcome> = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| run_case(i, c, cfg.cf_perturbation))
        .collect();

    let mut checks = Vec::new();
    let (theorem, n) = fold_max(outcomes.iter().map(|o| o.theorem));
    checks.push(max_check(
        "theorem_equivalence",
        theorem,
        THEOREM_TOL,
        &format!("|E_sv - E_cf| over {n} graphs"),
    ));
    let (orient, n) = fold_max(outcomes.iter().filter_map(|o| o.orientation));
    checks.push(max_check(
        "orientation_invariance",
        orient,
        INVARIANCE_TOL,
        &format!("|dE| over {n} reversals"),
    ));
    let (relabel, n) = fold_max(outcomes.iter().filter_map(|o| o.relabel));
    checks.push(max_check(
        "relabeling_invariance",
        relabel,
        INVARIANCE_TOL,
        &format!("|dE| over {n} permutations"),
    ));
    let (psi, n) = fold_max(outcomes.iter().filter_map(|o| o.psi_spread));
    checks.push(max_check(
        "psi_invariance",
        psi,
        INVARIANCE_TOL,
        &format!("E spread over {PSI_DRAWS} psi on {n} graphs"),
    ));

    let (maxent, n) = fold_max(outcomes.iter().filter_map(|o| o.max_entanglement));
    let empty_exact = (1..=cfg.max_m.max(1)).all(|m| {
        let g = DirectedGraph::empty(m).expect("m >= 1");
        plus_ed(&g, &GateParams::new(0.9, 0.4).expect("finite")) == 0.0
    });
    checks.push(Check {
        name: "maximal_entanglement",
        passed: maxent < MAX_ENTANGLEMENT_TOL && empty_exact,
        detail: format!(
            "max |E - 1| at theta = pi/2 = {maxent:.3e} over {n} graphs; empty graphs exactly 0: {empty_exact}"
        ),
    });

    checks.extend(alpha_checks());

    let (pv, n) = fold_max(outcomes.iter().map(|o| o.per_vertex));
    checks.push(max_check(
        "per_vertex_law",
        pv,
        PER_VERTEX_TOL,
        &format!("|E_i - (1 - cos^2d)| over {n} graphs"),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    checks.extend(gate_checks(&mut rng));
    checks.push(pauli_check(&mut rng));

    let (order, n) = fold_max(outcomes.iter().map(|o| o.edge_order));
    checks.push(max_check(
        "edge_order_independence",
        order,
        EDGE_ORDER_TOL,
        &format!("amplitude difference over {n} shuffles"),
    ));
    let (swap, n) = fold_max(outcomes.iter().filter_map(|o| o.degree_swap));
    checks.push(max_check(
        "degree_sufficiency",
        swap,
        INVARIANCE_TOL,
        &format!("|dE| over {n} degree-preserving swaps"),
    ));
    let (bloch, n) = fold_max(outcomes.iter().map(|o| o.bloch));
    checks.push(max_check(
        "bloch_consistency",
        bloch,
        BLOCH_CONSISTENCY_TOL,
        &format!("|rho_trace - rho_bloch| over {n} graphs"),
    ));
    checks.push(hs_zero_check(&mut rng));

    SuiteReport { checks }
}
