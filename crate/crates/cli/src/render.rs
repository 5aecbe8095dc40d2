//! Serialization of results. Everything here is deterministic: maps are
//! ordered, and `serde_json` sorts object keys.

use hermcode::cayley_spectrum::IsoReport;
use hermcode::code_construct::WeightDistribution;
use hermcode::exp_sums::ValueDistribution;
use hermcode::hermitian_graph::SpectrumLine;
use hermcode::CodeParams;
use serde_json::{json, Value};

pub fn weights_json(params: &CodeParams, dist: &WeightDistribution) -> String {
    let weights: Vec<Value> = dist.lines.iter().map(|(w, a)| json!({ "w": w, "A": a.to_string() })).collect();
    let doc = json!({
        "p": params.p,
        "m": params.m,
        "length": dist.length,
        "dimension": dist.dimension,
        "min_distance": dist.min_distance,
        "weights": weights,
    });
    serde_json::to_string_pretty(&doc).expect("json")
}

pub fn weights_csv(dist: &WeightDistribution) -> String {
    let mut out = String::from("w,A");
    for (w, a) in &dist.lines {
        out.push_str(&format!("\n{w},{a}"));
    }
    out
}

/// `1 + A*x^w + …` in ascending weight order.
pub fn weights_enumerator(dist: &WeightDistribution) -> String {
    dist.lines
        .iter()
        .map(|(&w, a)| if w == 0 { a.to_string() } else { format!("{a}*x^{w}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn spectrum_json(d: u32, r: u64, method: &str, lines: &[SpectrumLine]) -> String {
    let rows: Vec<Value> = lines
        .iter()
        .map(|l| json!({ "j": l.j, "theta": l.eigenvalue.to_string(), "f": l.multiplicity.to_string() }))
        .collect();
    let doc = json!({ "d": d, "r": r, "method": method, "eigenvalues": rows });
    serde_json::to_string_pretty(&doc).expect("json")
}

pub fn spectrum_csv(lines: &[SpectrumLine]) -> String {
    let mut out = String::from("j,theta,f");
    for l in lines {
        out.push_str(&format!("\n{},{},{}", l.j, l.eigenvalue, l.multiplicity));
    }
    out
}

/// `(θ_0,…,θ_d)/(f_0,…,f_d)`.
pub fn spectrum_table(lines: &[SpectrumLine]) -> String {
    let join = |f: &dyn Fn(&SpectrumLine) -> String| lines.iter().map(f).collect::<Vec<_>>().join(",");
    format!("({})/({})", join(&|l| l.eigenvalue.to_string()), join(&|l| l.multiplicity.to_string()))
}

pub fn t_values_json(params: &CodeParams, values: &ValueDistribution) -> String {
    let rows: Vec<Value> = values.iter().map(|(t, c)| json!({ "T": t.to_string(), "count": c.to_string() })).collect();
    let doc = json!({ "p": params.p, "m": params.m, "values": rows });
    serde_json::to_string_pretty(&doc).expect("json")
}

pub fn t_values_csv(values: &ValueDistribution) -> String {
    let mut out = String::from("T,count");
    for (t, c) in values {
        out.push_str(&format!("\n{t},{c}"));
    }
    out
}

pub fn iso_text(params: &CodeParams, report: &IsoReport) -> String {
    let mut out = format!("isomorphism check for p = {}, m = {}", params.p, params.m);
    for c in &report.clauses {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("\n  {mark} {}: {}", c.name, c.detail));
    }
    let passed = report.clauses.iter().filter(|c| c.passed).count();
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    out.push_str(&format!("\n{verdict} ({passed}/{} clauses)", report.clauses.len()));
    out
}

pub fn iso_json(params: &CodeParams, report: &IsoReport) -> String {
    let clauses: Vec<Value> =
        report.clauses.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
    let doc = json!({
        "p": params.p,
        "m": params.m,
        "passed": report.passed(),
        "exhaustive": report.exhaustive,
        "group_order": report.group_order.to_string(),
        "connection_set_size": report.s_size,
        "clauses": clauses,
    });
    serde_json::to_string_pretty(&doc).expect("json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hermcode::code_construct::closed_form_weight_distribution;

    #[test]
    fn enumerator_and_csv() {
        let params = CodeParams::new(2, 3).unwrap();
        let dist = closed_form_weight_distribution(&params).unwrap();
        assert_eq!(weights_enumerator(&dist), "1 + 210*x^24 + 280*x^36 + 21*x^48");
        assert_eq!(weights_csv(&dist), "w,A\n0,1\n24,210\n36,280\n48,21");
    }

    #[test]
    fn json_keys_are_sorted() {
        let params = CodeParams::new(2, 1).unwrap();
        let dist = closed_form_weight_distribution(&params).unwrap();
        let text = weights_json(&params, &dist);
        let keys: Vec<usize> = ["dimension", "length", "m", "min_distance", "p", "weights"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"A\": \"1\""));
    }
}
