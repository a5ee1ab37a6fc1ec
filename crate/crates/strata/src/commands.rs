//! One function per verb. Each returns a [`Report`]: a text rendering, a JSON
//! value and a status that decides the exit code.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};
use strata_core::exceptional::{
    candidate_roots, complete_sequences_from, find_exceptional, is_exceptional, is_tilting_module, root_seed,
    tilting_coresolution, tilting_modules_from, ExcSequence, ExceptionalCatalog, SequenceCatalog,
};
use strata_core::perpcat::{bongartz_complement, perp_algebra, transport_into_perp, PerpBranch, PerpPresentation};
use strata_core::quiver::is_acyclic;
use strata_core::repcat::{decompose, end_dim, ext1_dim, hom_space};
use strata_core::strat::{
    endo_rings_of_simples, factor_multiset, jordan_holder_report, kronecker_demo, standard_stratification,
    stratify_along_sequence, unresolved_warnings, verify_ringel_tilting, Chain,
};
use strata_core::{Error, Field, Mat, Quiver, Rep, Result};

use crate::format::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A computation finished and every check it makes held.
    Ok,
    /// A theorem check was violated.
    Fail,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub text: String,
    pub data: Value,
}

impl Report {
    fn new(pass: bool, text: String, data: Value) -> Self {
        Report {
            status: if pass { Status::Ok } else { Status::Fail },
            text,
            data,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub bound: usize,
    pub seed: u64,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn mat_rows<F: Field>(m: &Mat<F>) -> Vec<Vec<String>> {
    let f = m.field();
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| f.render(m.get(i, j))).collect())
        .collect()
}

fn rep_json<F: Field>(r: &Rep<F>) -> Value {
    let maps: serde_json::Map<String, Value> = r
        .quiver()
        .arrows()
        .iter()
        .zip(r.maps())
        .map(|(a, m)| (a.id.clone(), json!(mat_rows(m))))
        .collect();
    json!({ "dims": r.dims(), "maps": maps })
}

fn quiver_json(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({ "id": a.id, "source": q.label(a.source), "target": q.label(a.target) }))
        .collect();
    json!({ "vertices": q.labels(), "arrows": arrows })
}

fn quiver_text(q: &Quiver) -> String {
    if q.vertex_count() == 0 {
        return String::from("(no vertices)");
    }
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}:{}->{}", a.id, q.label(a.source), q.label(a.target)))
        .collect();
    format!("vertices [{}], arrows [{}]", q.labels().join(","), arrows.join(" "))
}

fn braces(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn need<F: Field>(reps: &[Rep<F>], k: usize, verb: &str) -> anyhow::Result<()> {
    if reps.len() < k {
        anyhow::bail!("`{verb}` needs {k} rep block(s) in the input, found {}", reps.len());
    }
    Ok(())
}

/// Direct sum of every rep block, or `None` when the file has none.
fn sum_of_blocks<F: Field>(reps: &[Rep<F>]) -> Result<Option<Rep<F>>> {
    if reps.is_empty() {
        return Ok(None);
    }
    Rep::direct_sum_of(reps).map(Some)
}

pub fn hom<F: Field>(reps: &[Rep<F>]) -> anyhow::Result<Report> {
    need(reps, 2, "hom")?;
    let (m, n) = (&reps[0], &reps[1]);
    let h = hom_space(m, n)?;
    let basis: Vec<Value> = h
        .basis()
        .iter()
        .map(|phi| json!(phi.components().iter().map(mat_rows).collect::<Vec<_>>()))
        .collect();
    let text = format!("Hom({}, {}) has dimension {}\n", m.dim_string(), n.dim_string(), h.dim());
    let data = json!({
        "source": m.dim_string(),
        "target": n.dim_string(),
        "hom_dim": h.dim(),
        "basis": basis,
    });
    Ok(Report::new(true, text, data))
}

pub fn ext<F: Field>(reps: &[Rep<F>]) -> anyhow::Result<Report> {
    need(reps, 2, "ext")?;
    let (m, n) = (&reps[0], &reps[1]);
    let hom_dim = hom_space(m, n)?.dim();
    let ext_dim = ext1_dim(m, n)?;
    let euler = m.quiver().euler_form(m.dims(), n.dims())?;
    let pass = hom_dim as i64 - ext_dim as i64 == euler;
    let text = format!(
        "Ext1({}, {}) has dimension {ext_dim}\nHom dimension {hom_dim}, Euler form {euler}: {}\n",
        m.dim_string(),
        n.dim_string(),
        verdict(pass)
    );
    let data = json!({
        "source": m.dim_string(),
        "target": n.dim_string(),
        "ext1_dim": ext_dim,
        "hom_dim": hom_dim,
        "euler_form": euler,
        "pass": pass,
    });
    Ok(Report::new(pass, text, data))
}

pub fn decompose_verb<F: Field>(reps: &[Rep<F>], opts: Options) -> anyhow::Result<Report> {
    need(reps, 1, "decompose")?;
    let m = &reps[0];
    let parts = decompose(m, opts.seed)?;
    let mut text = format!("{} decomposes into {} isotypic part(s)\n", m.dim_string(), parts.len());
    let mut summands = Vec::new();
    let mut total = vec![0usize; m.dims().len()];
    for (x, k) in &parts {
        let e = end_dim(x)?;
        let exc = is_exceptional(x, opts.seed)?;
        for (t, d) in total.iter_mut().zip(x.dims()) {
            *t += k * d;
        }
        let _ = writeln!(text, "  {} x{k}  End dim {e}{}", x.dim_string(), if exc { ", exceptional" } else { "" });
        summands.push(json!({
            "dims": x.dim_string(),
            "multiplicity": k,
            "end_dim": e,
            "exceptional": exc,
            "rep": rep_json(x),
        }));
    }
    let pass = total == m.dims();
    let data = json!({ "input": m.dim_string(), "summands": summands, "dims_add_up": pass });
    Ok(Report::new(pass, text, data))
}

/// The exceptional catalog, searching candidate roots in parallel. The
/// result matches the sequential enumeration.
pub fn catalog<F: Field>(q: &Arc<Quiver>, field: &F, opts: Options) -> Result<ExceptionalCatalog<F>> {
    if opts.bound == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let roots = candidate_roots(q, opts.bound);
    let outcomes = roots
        .par_iter()
        .enumerate()
        .map(|(i, d)| find_exceptional(q, field, d, root_seed(opts.seed, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExceptionalCatalog::from_searches(&roots, outcomes))
}

fn sequences<F: Field>(q: &Arc<Quiver>, field: &F, opts: Options) -> Result<SequenceCatalog<F>> {
    complete_sequences_from(catalog(q, field, opts)?, q.vertex_count())
}

pub fn exc_enum<F: Field>(q: &Arc<Quiver>, field: &F, opts: Options) -> anyhow::Result<Report> {
    let c = catalog(q, field, opts)?;
    let dims: Vec<String> = c.exceptionals.iter().map(Rep::dim_string).collect();
    let warnings = unresolved_warnings(&c.unresolved);
    let mut text = format!(
        "{} exceptional representation(s) up to total dimension {}\n",
        dims.len(),
        opts.bound
    );
    for d in &dims {
        let _ = writeln!(text, "  {d}");
    }
    for w in &warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let data = json!({
        "count": dims.len(),
        "exceptionals": c.exceptionals.iter().map(|x| json!({"dims": x.dim_string(), "rep": rep_json(x)})).collect::<Vec<_>>(),
        "unresolved": c.unresolved,
        "warnings": warnings,
    });
    Ok(Report::new(true, text, data))
}

pub fn seq_enum<F: Field>(q: &Arc<Quiver>, field: &F, opts: Options) -> anyhow::Result<Report> {
    let c = sequences(q, field, opts)?;
    let seqs: Vec<Vec<String>> = c.sequences.iter().map(|s| s.dims().iter().map(|d| dim_label(d)).collect()).collect();
    let warnings = unresolved_warnings(&c.unresolved);
    let mut text = format!(
        "{} complete exceptional sequence(s) from {} exceptional(s) up to total dimension {}\n",
        seqs.len(),
        c.exceptionals.len(),
        opts.bound
    );
    for s in &seqs {
        let _ = writeln!(text, "  [{}]", s.join(", "));
    }
    for w in &warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let data = json!({
        "sequence_count": seqs.len(),
        "exceptional_count": c.exceptionals.len(),
        "sequences": seqs,
        "warnings": warnings,
    });
    Ok(Report::new(true, text, data))
}

fn dim_label(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn tilting_check<F: Field>(reps: &[Rep<F>], opts: Options) -> anyhow::Result<Report> {
    need(reps, 1, "tilting-check")?;
    let t = Rep::direct_sum_of(reps)?;
    let self_ext = ext1_dim(&t, &t)?;
    let parts = decompose(&t, opts.seed)?;
    let tilting = is_tilting_module(&t, opts.seed)?;
    let coresolution = tilting_coresolution(&t, opts.seed)?.is_some();
    // The count criterion and the explicit coresolution must agree.
    let pass = tilting == coresolution;
    let n = t.quiver().vertex_count();
    let text = format!(
        "T = {}: Ext1(T,T) dim {self_ext}, {} distinct summand(s) for {n} vertices\ntilting: {tilting}, coresolution found: {coresolution}: {}\n",
        t.dim_string(),
        parts.len(),
        verdict(pass)
    );
    let data = json!({
        "module": t.dim_string(),
        "self_ext1_dim": self_ext,
        "summands": parts.iter().map(|(x, k)| json!({"dims": x.dim_string(), "multiplicity": k})).collect::<Vec<_>>(),
        "vertex_count": n,
        "is_tilting": tilting,
        "coresolution": coresolution,
        "pass": pass,
    });
    Ok(Report::new(pass, text, data))
}

/// For the projective branch: each ambient simple other than the removed one
/// becomes a simple of the perpendicular algebra, and together they cover
/// its vertices.
fn simples_survive<F: Field>(p: &PerpPresentation<F>, removed: usize) -> Result<bool> {
    let x = &p.generator;
    let n = x.quiver().vertex_count();
    let mut hit = vec![false; p.vertex_count()];
    for w in (0..n).filter(|&w| w != removed) {
        let s = Rep::simple(x.quiver().clone(), x.field().clone(), w)?;
        let t = transport_into_perp(p, &s)?;
        let ones: Vec<usize> = (0..t.dims().len()).filter(|&v| t.dim(v) == 1).collect();
        if t.total_dim() != 1 || hit[ones[0]] {
            return Ok(false);
        }
        hit[ones[0]] = true;
    }
    Ok(hit.iter().all(|&h| h))
}

pub fn perp<F: Field>(reps: &[Rep<F>], opts: Options) -> anyhow::Result<Report> {
    need(reps, 1, "perp")?;
    let x = &reps[0];
    let p = perp_algebra(x, opts.seed)?;
    let n = x.quiver().vertex_count();
    let b = &p.algebra_quiver;
    let pairs: Vec<(usize, usize)> = b.arrows().iter().map(|a| (a.source, a.target)).collect();
    let acyclic = is_acyclic(b.vertex_count(), &pairs);
    let count_ok = b.vertex_count() + 1 == n;
    let (branch, simples) = match p.branch {
        PerpBranch::Projective(v) => (format!("projective P_{}", x.quiver().label(v)), Some(simples_survive(&p, v)?)),
        PerpBranch::Bongartz => (String::from("Bongartz"), None),
    };
    let pass = acyclic && count_ok && simples != Some(false);
    let mut text = format!(
        "perpendicular algebra of X = {} ({branch} branch)\n  {} vertices (expected {}), acyclic: {acyclic}\n  quiver: {}\n",
        x.dim_string(),
        b.vertex_count(),
        n - 1,
        quiver_text(b)
    );
    for (v, q) in p.projectives_in_ambient.iter().enumerate() {
        let _ = writeln!(text, "  P'_{} = {}", b.label(v), q.dim_string());
    }
    if let Some(s) = simples {
        let _ = writeln!(text, "  simples carried over: {s}");
    }
    let _ = writeln!(text, "{}", verdict(pass));
    let data = json!({
        "generator": x.dim_string(),
        "branch": branch,
        "vertex_count": b.vertex_count(),
        "expected_vertex_count": n - 1,
        "acyclic": acyclic,
        "quiver": quiver_json(b),
        "projectives_in_ambient": p.projectives_in_ambient.iter().map(Rep::dim_string).collect::<Vec<_>>(),
        "simples_match": simples,
        "pass": pass,
    });
    Ok(Report::new(pass, text, data))
}

pub fn bongartz<F: Field>(reps: &[Rep<F>], opts: Options) -> anyhow::Result<Report> {
    need(reps, 1, "bongartz")?;
    let x = &reps[0];
    let m = bongartz_complement(x, opts.seed)?;
    let t = m.direct_sum(x)?;
    let tilting = is_tilting_module(&t, opts.seed)?;
    let parts = decompose(&m, opts.seed)?;
    let text = format!(
        "Bongartz complement of X = {}: M = {} with summands {}\nM + X tilting: {}\n",
        x.dim_string(),
        m.dim_string(),
        parts
            .iter()
            .map(|(s, k)| format!("{}x{k}", s.dim_string()))
            .collect::<Vec<_>>()
            .join(" "),
        verdict(tilting)
    );
    let data = json!({
        "generator": x.dim_string(),
        "complement": m.dim_string(),
        "summands": parts.iter().map(|(s, k)| json!({"dims": s.dim_string(), "multiplicity": k})).collect::<Vec<_>>(),
        "is_tilting": tilting,
        "pass": tilting,
    });
    Ok(Report::new(tilting, text, data))
}

fn chain_text<F: Field>(c: &Chain<F>) -> String {
    let mut text = String::new();
    for (i, (a, f)) in c.algebras.iter().zip(&c.factors).enumerate() {
        let g = c.generators.get(i).map_or(String::from("-"), Rep::dim_string);
        let _ = writeln!(
            text,
            "  step {}: vertex count {}, generator {g}, factor {} (dim {})",
            i + 1,
            a.vertex_count(),
            f.source_label,
            f.division_ring_dim
        );
    }
    text
}

pub fn stratify<F: Field>(q: &Arc<Quiver>, field: &F, reps: &[Rep<F>], opts: Options) -> anyhow::Result<Report> {
    let (mode, chain) = if reps.is_empty() {
        ("standard", standard_stratification(q, field, opts.seed)?)
    } else {
        let s = ExcSequence::new(reps.to_vec(), opts.seed)?;
        ("sequence", stratify_along_sequence(&s, opts.seed)?)
    };
    let expected = factor_multiset(&endo_rings_of_simples(q, field)?);
    let factors = chain.factor_multiset();
    let pass = chain.validate().is_ok() && chain.len() == q.vertex_count() && factors == expected;
    let text = format!(
        "{mode} stratification of length {}, factors {}, simples {}\n{}{}\n",
        chain.len(),
        braces(&factors),
        braces(&expected),
        chain_text(&chain),
        verdict(pass)
    );
    let data = json!({
        "mode": mode,
        "length": chain.len(),
        "n": q.vertex_count(),
        "algebras": chain.algebras.iter().map(|a| quiver_json(a)).collect::<Vec<_>>(),
        "generators": chain.generators.iter().map(Rep::dim_string).collect::<Vec<_>>(),
        "factors": chain.factors,
        "expected_factors": expected,
        "pass": pass,
    });
    Ok(Report::new(pass, text, data))
}

/// Stratifies every enumerated sequence, in parallel, and checks the
/// Jordan–Hölder property.
pub fn jh_verify<F: Field>(q: &Arc<Quiver>, field: &F, opts: Options) -> anyhow::Result<Report> {
    let c = sequences(q, field, opts)?;
    let expected = endo_rings_of_simples(q, field)?;
    let results: Vec<Result<Chain<F>>> = c
        .sequences
        .par_iter()
        .map(|s| stratify_along_sequence(s, opts.seed))
        .collect();
    let r = jordan_holder_report(q, &expected, &c.sequences, results, unresolved_warnings(&c.unresolved))?;
    let mut text = format!(
        "{} sequences, factors {}, {}\n",
        r.sequence_count,
        braces(&r.expected_factors),
        verdict(r.pass)
    );
    for (i, ch) in r.chains.iter().enumerate() {
        let _ = writeln!(
            text,
            "  {}: [{}] factors {}",
            i + 1,
            ch.sequence.join(", "),
            braces(&ch.factors)
        );
    }
    for v in &r.violations {
        let _ = writeln!(text, "violation: {v}");
    }
    for w in &r.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let mut data = serde_json::to_value(&r).expect("report serialises");
    data["quiver"] = quiver_json(q);
    Ok(Report::new(r.pass, text, data))
}

pub fn ringel_check<F: Field>(q: &Arc<Quiver>, field: &F, reps: &[Rep<F>], opts: Options) -> anyhow::Result<Report> {
    let modules: Vec<Rep<F>> = match sum_of_blocks(reps)? {
        Some(t) => vec![t],
        None => {
            let c = catalog(q, field, opts)?;
            tilting_modules_from(&c.exceptionals, q.vertex_count())?
                .iter()
                .map(|parts| Rep::direct_sum_of(parts))
                .collect::<Result<_>>()?
        }
    };
    let reports = modules
        .par_iter()
        .map(|t| verify_ringel_tilting(t, opts.seed))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let mut text = format!("{} tilting module(s) checked: {}\n", reports.len(), verdict(pass));
    for r in &reports {
        let _ = writeln!(
            text,
            "  [{}] End dims {} vs simples {}: {}",
            r.summands.join(", "),
            braces(&r.summand_end_dims),
            braces(&r.simple_end_dims),
            verdict(r.pass)
        );
    }
    let data = json!({ "module_count": reports.len(), "modules": reports, "pass": pass });
    Ok(Report::new(pass, text, data))
}

pub fn kronecker(p: u64, opts: Options) -> anyhow::Result<Report> {
    let r = kronecker_demo(p, opts.seed)?;
    let text = format!(
        "Kronecker regular simples over F_{}: {} parameters [{}]\n  orthogonal pairs {}/{}, self Hom dims {}, self Ext1 dims {}, exceptional {}\n  {}\northogonality {}\n",
        r.prime,
        r.parameters.len(),
        r.parameters.join(", "),
        r.orthogonal_pairs,
        r.distinct_pairs,
        braces(&r.self_hom_dims),
        braces(&r.self_ext_dims),
        r.exceptional_count,
        r.note,
        verdict(r.pass)
    );
    let data = serde_json::to_value(&r).expect("report serialises");
    Ok(Report::new(r.pass, text, data))
}

/// Dispatches a file-based verb over a concrete field.
pub fn run_over<F: Field>(verb: crate::Verb, doc: &Document, field: F, opts: Options) -> anyhow::Result<Report> {
    use crate::Verb;
    let reps = doc.reps(&field)?;
    let q = &doc.quiver;
    match verb {
        Verb::Hom => hom(&reps),
        Verb::Ext => ext(&reps),
        Verb::Decompose => decompose_verb(&reps, opts),
        Verb::ExcEnum => exc_enum(q, &field, opts),
        Verb::SeqEnum => seq_enum(q, &field, opts),
        Verb::TiltingCheck => tilting_check(&reps, opts),
        Verb::Perp => perp(&reps, opts),
        Verb::Bongartz => bongartz(&reps, opts),
        Verb::Stratify => stratify(q, &field, &reps, opts),
        Verb::JhVerify => jh_verify(q, &field, opts),
        Verb::RingelCheck => ringel_check(q, &field, &reps, opts),
        Verb::KroneckerDemo => unreachable!("handled without a field"),
    }
}
