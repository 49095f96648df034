//! Text output: 17-significant-digit numbers, CSV tables and JSON reports.

use digraph_ed_core::entanglement::{EdReport, SweepResult, ThetaSample};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// `%.17g`: enough digits to round-trip any `f64`.
pub fn g17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    trim_zeros(&format!("{x:.*}", (16 - exp) as usize)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// An `f64` that serializes to JSON as its [`g17`] text.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(g17(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

fn opt(x: Option<f64>) -> Option<Num> {
    x.map(Num)
}

#[derive(Serialize)]
struct ReportJson<'a> {
    per_vertex: Vec<Num>,
    total_sv: Num,
    total_cf: Option<Num>,
    discrepancy: Option<Num>,
    theta: Num,
    psi: Num,
    graph_hash: &'a str,
    policy: &'static str,
}

pub fn report_json(r: &EdReport) -> String {
    let j = ReportJson {
        per_vertex: r.per_vertex.iter().copied().map(Num).collect(),
        total_sv: Num(r.total_statevector),
        total_cf: opt(r.total_closed_form),
        discrepancy: opt(r.discrepancy),
        theta: Num(r.gp.theta()),
        psi: Num(r.gp.psi()),
        graph_hash: &r.graph_hash,
        policy: r.policy.name(),
    };
    serde_json::to_string_pretty(&j).expect("report serializes") + "\n"
}

fn cell(x: Option<f64>) -> String {
    x.map(g17).unwrap_or_default()
}

pub const THETA_HEADER: &str = "theta,E_sv,E_cf,discrepancy";
pub const ALPHA_HEADER: &str = "t,E,S_nats,D_HS";

pub fn theta_csv(rows: &[ThetaSample]) -> String {
    let mut out = String::from(THETA_HEADER);
    out.push('\n');
    for r in rows {
        out += &format!(
            "{},{},{},{}\n",
            g17(r.theta),
            g17(r.ed_statevector),
            cell(r.ed_closed_form),
            cell(r.discrepancy)
        );
    }
    out
}

#[derive(Serialize)]
struct ThetaRowJson {
    theta: Num,
    #[serde(rename = "E_sv")]
    e_sv: Num,
    #[serde(rename = "E_cf")]
    e_cf: Option<Num>,
    discrepancy: Option<Num>,
}

pub fn theta_json(rows: &[ThetaSample]) -> String {
    let rows: Vec<ThetaRowJson> = rows
        .iter()
        .map(|r| ThetaRowJson {
            theta: Num(r.theta),
            e_sv: Num(r.ed_statevector),
            e_cf: opt(r.ed_closed_form),
            discrepancy: opt(r.discrepancy),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
}

pub fn alpha_csv(sweep: &SweepResult) -> String {
    let mut out = String::from(ALPHA_HEADER);
    out.push('\n');
    for s in &sweep.samples {
        out += &format!(
            "{},{},{},{}\n",
            g17(s.param),
            g17(s.ed),
            g17(s.entropy),
            g17(s.hs_distance)
        );
    }
    out
}

#[derive(Serialize)]
struct AlphaRowJson {
    t: Num,
    #[serde(rename = "E")]
    e: Num,
    #[serde(rename = "S_nats")]
    s: Num,
    #[serde(rename = "D_HS")]
    d_hs: Num,
}

#[derive(Serialize)]
struct AlphaJson {
    samples: Vec<AlphaRowJson>,
    #[serde(rename = "argmax_E")]
    argmax_e: Num,
    #[serde(rename = "argmax_S")]
    argmax_s: Num,
    #[serde(rename = "argmin_DHS")]
    argmin_dhs: Num,
    degenerate: bool,
}

pub fn alpha_json(sweep: &SweepResult) -> String {
    let j = AlphaJson {
        samples: sweep
            .samples
            .iter()
            .map(|s| AlphaRowJson {
                t: Num(s.param),
                e: Num(s.ed),
                s: Num(s.entropy),
                d_hs: Num(s.hs_distance),
            })
            .collect(),
        argmax_e: Num(sweep.argmax_ed),
        argmax_s: Num(sweep.argmax_entropy),
        argmin_dhs: Num(sweep.argmin_hs),
        degenerate: sweep.degenerate,
    };
    serde_json::to_string_pretty(&j).expect("sweep serializes") + "\n"
}

/// Amplitudes as `[re, im]` pairs in index order, for debugging.
pub fn amplitudes_json(amps: &[digraph_ed_core::Complex64]) -> String {
    let pairs: Vec<[Num; 2]> = amps.iter().map(|a| [Num(a.re), Num(a.im)]).collect();
    serde_json::to_string(&pairs).expect("amplitudes serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn g17_examples() {
        assert_eq!(g17(0.0), "0");
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.5), "0.5");
        assert_eq!(g17(7.0 / 12.0), "0.58333333333333337");
        assert_eq!(g17(std::f64::consts::PI), "3.1415926535897931");
        assert_eq!(g17(1e-10), "1e-10");
        assert_eq!(g17(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(g17(-2.5), "-2.5");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(0.0001), "0.0001");
    }

    proptest! {
        #[test]
        fn g17_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
            let back: f64 = g17(x).parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }

        #[test]
        fn num_is_valid_json(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
            let s = serde_json::to_string(&Num(x)).unwrap();
            let v: serde_json::Value = serde_json::from_str(&s).unwrap();
            prop_assert!(v.is_number());
        }
    }
}
