use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use lscrystal_core::energy::{verify_main, EnergyFunction};
use lscrystal_core::onedsum::{
    charge_oracle, kostka_foulkes_paths, normalized_one_dim_sum, one_dim_sum, path_degree_sum, restricted_highest,
    weight_to_partition,
};
use lscrystal_core::{
    datum_for, AffineCartanDatum, ClassicalWeight, Context, CrystalGraph, Family, LaurentPolynomial,
    LevelZeroDominantWeight, Partition,
};
use serde_json::json;

use crate::{Common, Failure};

pub type Outcome = Result<String, (String, Failure)>;

enum Format {
    Text,
    Json,
    Csv,
}

fn format(c: &Common) -> Format {
    if c.json {
        Format::Json
    } else if c.csv {
        Format::Csv
    } else {
        Format::Text
    }
}

fn bare(f: impl Into<Failure>) -> (String, Failure) {
    (String::new(), f.into())
}

fn usage(msg: impl Into<String>) -> (String, Failure) {
    (String::new(), Failure::Usage(msg.into()))
}

fn context(c: &Common) -> Result<Context, (String, Failure)> {
    let datum = datum_for(c.family, c.rank).map_err(bare)?;
    Ok(match c.cap {
        Some(cap) => Context::with_cap(datum, cap),
        None => Context::new(datum),
    })
}

fn lambda(c: &Common, ctx: &Context) -> Result<LevelZeroDominantWeight, (String, Failure)> {
    let lambda = match (&c.weights, &c.seq) {
        (Some(w), _) => LevelZeroDominantWeight::new(ctx.datum(), w.clone()).map_err(bare)?,
        (None, Some(s)) => LevelZeroDominantWeight::from_sequence(ctx.datum(), s).map_err(bare)?,
        (None, None) => return Err(usage("one of --weights or --seq is required")),
    };
    if lambda.is_zero() {
        return Err(usage("λ must be nonzero"));
    }
    Ok(lambda)
}

fn sequence(c: &Common, ctx: &Context) -> Result<Vec<usize>, (String, Failure)> {
    match &c.seq {
        Some(s) if s.is_empty() => Err(usage("--seq must not be empty")),
        Some(s) => {
            // validates the indices
            LevelZeroDominantWeight::from_sequence(ctx.datum(), s).map_err(bare)?;
            Ok(s.clone())
        }
        None => Ok(lambda(c, ctx)?.as_sequence()),
    }
}

fn mu(c: &Common, datum: &AffineCartanDatum) -> Result<Option<ClassicalWeight>, (String, Failure)> {
    c.mu.as_ref()
        .map(|m| datum.weight_from_multiplicities(m).map_err(bare))
        .transpose()
}

/// `μ(h_1),…,μ(h_n)`, the inverse of `--mu`.
fn mu_label(datum: &AffineCartanDatum, mu: &ClassicalWeight) -> String {
    datum
        .classical_indices()
        .map(|i| mu.pairing(i).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn seq_label(seq: &[usize]) -> String {
    seq.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn poly_json(p: &LaurentPolynomial) -> serde_json::Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn keyed(graph: &CrystalGraph, values: &[i64]) -> serde_json::Value {
    let map: BTreeMap<&str, i64> = (0..graph.len()).map(|b| (graph.key(b), values[b])).collect();
    json!(map)
}

pub fn crystal(c: &Common) -> Outcome {
    let ctx = context(c)?;
    let d = ctx.datum();
    let graph = match &c.seq {
        Some(_) => ctx.sequence_crystal(&sequence(c, &ctx)?),
        None => ctx.path_crystal(&lambda(c, &ctx)?),
    }
    .map_err(bare)?;
    let report = graph.check_simple();
    let mut out = String::new();
    match format(c) {
        Format::Json => {
            let mut doc = graph.to_json();
            let weights: Vec<_> = graph
                .weight_multiplicities()
                .into_iter()
                .map(|(w, m)| json!({"weight": w.to_string(), "multiplicity": m}))
                .collect();
            doc["type"] = json!(d.label());
            doc["shape"] = json!(graph.shape().to_string());
            doc["weights"] = json!(weights);
            doc["simple"] = serde_json::to_value(&report).expect("report serializes");
            out = to_json_text(&doc);
        }
        Format::Csv => {
            out.push_str("index,element,weight\n");
            for b in 0..graph.len() {
                let _ = writeln!(out, "{b},{},{}", csv_field(graph.key(b)), csv_field(&graph.weight(b).to_string()));
            }
        }
        Format::Text => {
            let _ = writeln!(out, "type {}", d.label());
            let _ = writeln!(out, "crystal {}", graph.shape());
            let _ = writeln!(out, "elements {}", graph.len());
            let verdict = if report.passed { "yes" } else { "no" };
            let _ = writeln!(out, "simple {verdict} ({} extremal)", report.extremal);
            if let Some(f) = &report.failure {
                let _ = writeln!(out, "  failure: {f}");
            }
            out.push_str("weights\n");
            for (w, m) in graph.weight_multiplicities() {
                let _ = writeln!(out, "  {w} {m}");
            }
            out.push_str("elements\n");
            for b in 0..graph.len() {
                let _ = writeln!(out, "  {b} {}", graph.key(b));
            }
            out.push_str("edges\n");
            for j in d.indices() {
                for b in 0..graph.len() {
                    if let Some(t) = graph.lower(b, j) {
                        let _ = writeln!(out, "  f_{j} {b} -> {t}");
                    }
                }
            }
        }
    }
    if report.passed {
        Ok(out)
    } else {
        let msg = report.failure.unwrap_or_else(|| "simplicity check failed".into());
        Err((out, Failure::Verification(msg)))
    }
}

pub fn energy(c: &Common) -> Outcome {
    let ctx = context(c)?;
    if c.seq.is_none() {
        return degree(c, &ctx);
    }
    let d = ctx.datum();
    let seq = sequence(c, &ctx)?;
    let lam = lambda(c, &ctx)?;
    let f = EnergyFunction::new(&ctx, &seq).map_err(bare)?;
    let tensor = f.tensor().clone();
    let psi = ctx.psi_sequence(&seq).map_err(bare)?;
    let deg = ctx.degree_table(&lam).map_err(bare)?;
    let ext = f.ext();
    let h = if seq.len() == 2 {
        let (a, b) = (ctx.fundamental_weight(seq[0]).map_err(bare)?, ctx.fundamental_weight(seq[1]).map_err(bare)?);
        Some(ctx.local_energy(&a, &b).map_err(bare)?)
    } else {
        None
    };
    let dvals: Vec<i64> = (0..tensor.len()).map(|b| f.value(b)).collect();
    let degs: Vec<i64> = (0..tensor.len()).map(|b| deg.value(psi.invert(b))).collect();
    let mismatches: Vec<usize> = (0..tensor.len()).filter(|&b| degs[b] != dvals[b] - ext).collect();

    let mut out = String::new();
    match format(c) {
        Format::Json => {
            let mut doc = json!({
                "type": d.label(),
                "sequence": seq,
                "d_ext": ext,
                "d": keyed(&tensor, &dvals),
                "deg": keyed(&tensor, &degs),
            });
            if let Some(h) = &h {
                doc["h"] = h.to_json();
            }
            out = to_json_text(&doc);
        }
        Format::Csv => {
            out.push_str(if h.is_some() { "element,H,D,Deg\n" } else { "element,D,Deg\n" });
            for b in 0..tensor.len() {
                let hcol = h.as_ref().map(|h| format!("{},", h.value(b))).unwrap_or_default();
                let _ = writeln!(out, "{},{hcol}{},{}", csv_field(tensor.key(b)), dvals[b], degs[b]);
            }
        }
        Format::Text => {
            let _ = writeln!(out, "type {}", d.label());
            let _ = writeln!(out, "sequence {}", seq_label(&seq));
            let _ = writeln!(out, "D_ext {ext}");
            out.push_str(if h.is_some() { "     H     D   Deg  element\n" } else { "     D   Deg  element\n" });
            for b in 0..tensor.len() {
                let hcol = h.as_ref().map(|h| format!("{:>6}", h.value(b))).unwrap_or_default();
                let _ = writeln!(out, "{hcol}{:>6}{:>6}  {}", dvals[b], degs[b], tensor.key(b));
            }
        }
    }
    if mismatches.is_empty() {
        Ok(out)
    } else {
        let keys: Vec<&str> = mismatches.iter().take(5).map(|&b| tensor.key(b)).collect();
        Err((out, Failure::Verification(format!("Deg ≠ D - D_ext at {}", keys.join("; ")))))
    }
}

fn degree(c: &Common, ctx: &Context) -> Outcome {
    let lam = lambda(c, ctx)?;
    let deg = ctx.degree_table(&lam).map_err(bare)?;
    let g = deg.graph();
    let mut out = String::new();
    match format(c) {
        Format::Json => {
            out = to_json_text(&json!({
                "type": ctx.datum().label(),
                "lambda": lam.to_string(),
                "deg": deg.to_json(),
            }))
        }
        Format::Csv => {
            out.push_str("element,Deg\n");
            for b in 0..g.len() {
                let _ = writeln!(out, "{},{}", csv_field(g.key(b)), deg.value(b));
            }
        }
        Format::Text => {
            let _ = writeln!(out, "type {}", ctx.datum().label());
            let _ = writeln!(out, "Deg on B({lam})");
            for b in 0..g.len() {
                let _ = writeln!(out, "{:>6}  {}", deg.value(b), g.key(b));
            }
        }
    }
    Ok(out)
}

fn dominant_weights(ctx: &Context, seq: &[usize]) -> Result<BTreeSet<ClassicalWeight>, (String, Failure)> {
    let g = ctx.sequence_crystal(seq).map_err(bare)?;
    Ok(restricted_highest(&g).into_iter().map(|b| g.weight(b).clone()).collect())
}

struct SumRow {
    mu: String,
    x: LaurentPolynomial,
    normalized: LaurentPolynomial,
}

fn sums(ctx: &Context, seq: &[usize], mus: &[ClassicalWeight]) -> Result<Vec<SumRow>, (String, Failure)> {
    let lam = LevelZeroDominantWeight::from_sequence(ctx.datum(), seq).map_err(bare)?;
    let mut rows = Vec::with_capacity(mus.len());
    for mu in mus {
        let x = one_dim_sum(ctx, seq, mu).map_err(bare)?;
        let normalized = normalized_one_dim_sum(ctx, seq, mu).map_err(bare)?;
        let paths = path_degree_sum(ctx, &lam, mu).map_err(bare)?;
        if paths != normalized {
            return Err(bare(Failure::Verification(format!(
                "μ = {}: path degree sum {paths} differs from the normalized 1d sum {normalized}",
                mu_label(ctx.datum(), mu)
            ))));
        }
        rows.push(SumRow {
            mu: mu_label(ctx.datum(), mu),
            x,
            normalized,
        });
    }
    Ok(rows)
}

pub fn onedsum(c: &Common) -> Outcome {
    let ctx = context(c)?;
    let d = ctx.datum();
    let seq = sequence(c, &ctx)?;
    let target = mu(c, d)?;
    let mus: Vec<ClassicalWeight> = match &target {
        Some(m) => vec![m.clone()],
        None => dominant_weights(&ctx, &seq)?.into_iter().collect(),
    };
    let rows = sums(&ctx, &seq, &mus)?;
    let ext = EnergyFunction::new(&ctx, &seq).map_err(bare)?.ext();
    let mut out = String::new();
    match format(c) {
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|r| json!({"mu": r.mu, "x": poly_json(&r.x), "normalized": poly_json(&r.normalized)}))
                .collect();
            out = to_json_text(&json!({
                "type": d.label(),
                "sequence": seq,
                "d_ext": ext,
                "sums": list,
            }));
        }
        Format::Csv => {
            out.push_str("mu,x,normalized\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", csv_field(&r.mu), csv_field(&r.x.to_string()), csv_field(&r.normalized.to_string()));
            }
        }
        Format::Text if target.is_some() => {
            let _ = writeln!(out, "{}", rows[0].x);
        }
        Format::Text => {
            let _ = writeln!(out, "type {}", d.label());
            let _ = writeln!(out, "sequence {}", seq_label(&seq));
            let _ = writeln!(out, "D_ext {ext}");
            for r in &rows {
                let _ = writeln!(out, "mu {}: X = {}; q^D_ext X = {}", r.mu, r.x, r.normalized);
            }
        }
    }
    Ok(out)
}

pub fn kostka(c: &Common) -> Outcome {
    if c.family != Family::A {
        return Err(usage("kostka needs --type A"));
    }
    let ctx = context(c)?;
    let d = ctx.datum();
    let seq = sequence(c, &ctx)?;
    let n: usize = seq.iter().sum();
    let content = Partition::from_sequence(&seq).map_err(bare)?;
    let shapes: Vec<(ClassicalWeight, Option<Partition>)> = match mu(c, d)? {
        Some(m) => {
            let nu = weight_to_partition(d, &m, n as u32).map_err(bare)?;
            vec![(m, nu)]
        }
        None => Partition::all(n as u32, c.rank)
            .into_iter()
            .map(|nu| {
                let m = lscrystal_core::onedsum::partition_to_weight(d, &nu).map_err(bare)?;
                Ok((m, Some(nu)))
            })
            .collect::<Result<_, (String, Failure)>>()?,
    };
    let mut rows = Vec::new();
    for (m, nu) in &shapes {
        let from_paths = kostka_foulkes_paths(&ctx, &seq, m).map_err(bare)?;
        let shape = nu.as_ref().map(Partition::conjugate);
        let from_charge = match &shape {
            Some(s) => charge_oracle(s, &content).map_err(bare)?,
            None => LaurentPolynomial::zero(),
        };
        if from_paths != from_charge {
            return Err(bare(Failure::Verification(format!(
                "μ = {}: paths give {from_paths}, charge gives {from_charge}",
                mu_label(d, m)
            ))));
        }
        rows.push((mu_label(d, m), shape, from_paths));
    }
    let mut out = String::new();
    match format(c) {
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|(m, s, k)| json!({"mu": m, "shape": s.as_ref().map(|s| s.to_string()), "k": poly_json(k)}))
                .collect();
            out = to_json_text(&json!({
                "type": d.label(),
                "sequence": seq,
                "content": content.to_string(),
                "kostka": list,
            }));
        }
        Format::Csv => {
            out.push_str("mu,shape,content,k\n");
            for (m, s, k) in &rows {
                let shape = s.as_ref().map(|s| s.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{},{}", csv_field(m), csv_field(&shape), csv_field(&content.to_string()), csv_field(&k.to_string()));
            }
        }
        Format::Text => {
            for (m, s, k) in &rows {
                match s {
                    Some(s) => {
                        let _ = writeln!(out, "K_{s},{content} = {k}");
                    }
                    None => {
                        let _ = writeln!(out, "mu {m} is not a partition weight: 0");
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The byte-exact document compared by `verify --golden`.
fn golden_document(ctx: &Context, seq: &[usize]) -> Result<String, (String, Failure)> {
    let d = ctx.datum();
    let lam = LevelZeroDominantWeight::from_sequence(d, seq).map_err(bare)?;
    let deg = ctx.degree_table(&lam).map_err(bare)?;
    let f = EnergyFunction::new(ctx, seq).map_err(bare)?;
    let tensor = f.tensor().clone();
    let dvals: Vec<i64> = (0..tensor.len()).map(|b| f.value(b)).collect();
    let mus: Vec<ClassicalWeight> = dominant_weights(ctx, seq)?.into_iter().collect();
    let rows = sums(ctx, seq, &mus)?;
    let sums: BTreeMap<String, serde_json::Value> =
        rows.iter().map(|r| (r.mu.clone(), poly_json(&r.normalized))).collect();
    Ok(to_json_text(&json!({
        "type": d.label(),
        "sequence": seq,
        "lambda": lam.to_string(),
        "d_ext": f.ext(),
        "deg": deg.to_json(),
        "d": keyed(&tensor, &dvals),
        "sums": sums,
    })))
}

pub fn verify(c: &Common) -> Outcome {
    let ctx = context(c)?;
    let seq = sequence(c, &ctx)?;
    if c.emit_golden {
        return golden_document(&ctx, &seq);
    }
    let report = verify_main(&ctx, &seq).map_err(bare)?;
    let mut problems: Vec<String> = report
        .checks
        .iter()
        .filter(|ch| !ch.passed())
        .map(|ch| format!("{}: {} of {} failed", ch.name, ch.failures, ch.checked))
        .collect();
    let mut golden_status = None;
    if let Some(path) = &c.golden {
        let expected = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let actual = golden_document(&ctx, &seq)?;
        if expected == actual {
            golden_status = Some("golden file matches".to_string());
        } else {
            let line = expected
                .lines()
                .zip(actual.lines())
                .position(|(a, b)| a != b)
                .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()))
                + 1;
            let msg = format!("golden file {} differs at line {line}", path.display());
            golden_status = Some(msg.clone());
            problems.push(msg);
        }
    }
    let mut out = String::new();
    match format(c) {
        Format::Json => {
            let mut doc = serde_json::to_value(&report).expect("report serializes");
            doc["passed"] = json!(problems.is_empty());
            if let Some(g) = &golden_status {
                doc["golden"] = json!(g);
            }
            out = to_json_text(&doc);
        }
        Format::Csv => {
            out.push_str("check,checked,failures,examples\n");
            for ch in &report.checks {
                let _ = writeln!(out, "{},{},{},{}", csv_field(&ch.name), ch.checked, ch.failures, csv_field(&ch.examples.join("; ")));
            }
        }
        Format::Text => {
            let _ = writeln!(out, "type {}", report.datum);
            let _ = writeln!(out, "sequence {}", seq_label(&seq));
            let _ = writeln!(out, "lambda {}", report.lambda);
            let _ = writeln!(out, "elements {}", report.elements);
            let _ = writeln!(out, "D_ext {}", report.d_ext);
            for ch in &report.checks {
                if ch.passed() {
                    let _ = writeln!(out, "PASS {} ({} checked)", ch.name, ch.checked);
                } else {
                    let _ = writeln!(out, "FAIL {} ({} of {} failed)", ch.name, ch.failures, ch.checked);
                    for e in &ch.examples {
                        let _ = writeln!(out, "  counterexample {e}");
                    }
                }
            }
            if let Some(g) = &golden_status {
                let _ = writeln!(out, "{g}");
            }
        }
    }
    if problems.is_empty() {
        Ok(out)
    } else {
        Err((out, Failure::Verification(problems.join("; "))))
    }
}
