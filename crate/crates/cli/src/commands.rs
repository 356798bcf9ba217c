use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use compdim::builders::{self, AgeRealizer};
use compdim::classifier::{self, ClassificationReport, Witness};
use compdim::crowns::{self, CrownFamily};
use compdim::dimension::{exact_dimension, exact_dimension_with, DimensionValue, SolverConfig};
use compdim::order::{
    age_member, age_truncation, render, subword_embedding, Composition, GeneralizedWord, Partition,
    TruncationSpec,
};
use compdim::poset::{text, verify_realizer, CompositionPoset, FinitePoset, Label, RealizerReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub report: Value,
}

fn comp(s: &str) -> Result<Composition> {
    s.parse().with_context(|| format!("cannot read composition {s:?}"))
}

fn word(s: &str) -> Result<GeneralizedWord> {
    s.parse().with_context(|| format!("cannot read word {s:?}"))
}

fn show(c: &Composition) -> String {
    if c.is_empty() {
        "e".into()
    } else {
        c.to_string()
    }
}

pub fn le(u: &str, w: &str, embedding: bool) -> Result<Outcome> {
    let (u, w) = (comp(u)?, comp(w)?);
    let emb = subword_embedding(&u, &w);
    let mut text = format!("{}\n", emb.is_some());
    if let (true, Some(e)) = (embedding, &emb) {
        let cols: Vec<String> = e.iter().map(|i| i.to_string()).collect();
        writeln!(text, "columns: {}", cols.join(" "))?;
    }
    let report = json!({ "u": show(&u), "w": show(&w), "le": emb.is_some(), "embedding": emb });
    Ok(Outcome { status: Status::of(emb.is_some()), text, report })
}

pub fn member(c: &str, w: &str) -> Result<Outcome> {
    let (c, w) = (comp(c)?, word(w)?);
    let m = age_member(&c, &w);
    let report = json!({ "composition": show(&c), "word": w.to_string(), "member": m });
    Ok(Outcome { status: Status::of(m), text: format!("{m}\n"), report })
}

pub fn truncate(w: &str, t: TruncationSpec, list: bool) -> Result<Outcome> {
    let w = word(w)?;
    let top = w.truncate(t);
    let age = age_truncation(&w, t);
    let mut text = format!("truncation: {}\nelements: {}\n", show(&top), age.len());
    if list {
        for c in &age {
            writeln!(text, "{}", show(c))?;
        }
    }
    let elements: Vec<String> = if list { age.iter().map(show).collect() } else { Vec::new() };
    let report = json!({ "word": w.to_string(), "truncation": show(&top), "size": age.len(), "elements": elements });
    Ok(Outcome { status: Status::Pass, text, report })
}

fn crown_report<T: crowns::AgeElement + std::fmt::Debug + Label>(
    f: &CrownFamily<T>,
    solve: Option<usize>,
) -> Result<Outcome> {
    let check = crowns::verify_crown(f);
    let mut text = format!(
        "family: {}\nn: {}\nhost: {}\nclaimed dimension: {}\n",
        f.family, f.n, f.host, f.claimed_dimension
    );
    for (i, (a, b)) in f.lower.iter().zip(&f.upper).enumerate() {
        writeln!(text, "a{} = {a:?}   b{} = {b:?}", i + 1, i + 1)?;
    }
    writeln!(text, "crown: {}", if check.holds { "verified" } else { "FAILED" })?;
    if let Some(d) = &check.defect {
        writeln!(text, "defect: {d}")?;
    }
    let mut ok = check.holds;
    let mut solved = Value::Null;
    if let Some(d_max) = solve {
        let r = exact_dimension(&f.to_poset()?, d_max.max(f.claimed_dimension));
        writeln!(text, "solver: {:?}", r.value)?;
        ok &= r.exact() == Some(f.claimed_dimension);
        solved = serde_json::to_value(r.value)?;
    }
    let lower: Vec<String> = f.lower.iter().map(|x| format!("{x:?}")).collect();
    let upper: Vec<String> = f.upper.iter().map(|x| format!("{x:?}")).collect();
    let report = json!({
        "family": f.family, "n": f.n, "host": f.host.to_string(),
        "claimed_dimension": f.claimed_dimension, "lower": lower, "upper": upper,
        "check": check, "solver": solved,
    });
    Ok(Outcome { status: Status::of(ok), text, report })
}

pub fn crown(family: &str, n: usize, solve: Option<usize>) -> Result<Outcome> {
    if family == "partition" {
        crown_report(&crowns::partition_crown(n)?, solve)
    } else {
        crown_report(&crowns::composition_family(family, n)?, solve)
    }
}

fn read_poset(path: &Path) -> Result<(CompositionPoset, Vec<compdim::poset::Refinement>)> {
    let src = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text::parse::<Composition>(&src).with_context(|| format!("in {}", path.display()))
}

pub fn dim(age: Option<&str>, poset: Option<&Path>, t: TruncationSpec, d_max: usize, node_limit: u64) -> Result<Outcome> {
    let (p, source) = match (age, poset) {
        (Some(w), _) => (builders::truncated_host(&word(w)?, t), format!("Age({w}) at B={} R={}", t.omega_cap, t.repeat_cap)),
        (None, Some(f)) => (read_poset(f)?.0, f.display().to_string()),
        (None, None) => bail!("give --age WORD or --poset FILE"),
    };
    if d_max == 0 {
        bail!("--max must be positive");
    }
    let cfg = SolverConfig { node_limit, ..SolverConfig::default() };
    let r = exact_dimension_with(&p, d_max, &cfg);
    let value = match r.value {
        DimensionValue::Exact { d } => d.to_string(),
        DimensionValue::Exceeds { d_max } => format!("> {d_max}"),
        DimensionValue::Inconclusive { lower, upper } => match upper {
            Some(u) => format!("between {lower} and {u} (budget exhausted)"),
            None => format!("at least {lower} (budget exhausted)"),
        },
    };
    let text = format!(
        "poset: {source}\nelements: {}\ncritical pairs: {}\ndimension: {value}\n",
        p.len(),
        r.critical_pairs
    );
    let ok = !matches!(r.value, DimensionValue::Inconclusive { .. });
    let report = json!({ "source": source, "elements": p.len(), "result": r });
    Ok(Outcome { status: Status::of(ok), text, report })
}

fn params<const N: usize>(construction: &str, ps: &[String]) -> Result<[Composition; N]> {
    if ps.len() != N {
        bail!("{construction} takes {N} composition parameter(s), got {}", ps.len());
    }
    let v: Vec<Composition> = ps.iter().map(|s| comp(s)).collect::<Result<_>>()?;
    Ok(v.try_into().expect("length checked"))
}

fn family_file<L: Label + std::fmt::Display>(
    path: Option<&Path>,
    host: &FinitePoset<L>,
    family: &[compdim::poset::Refinement],
) -> Result<()> {
    if let Some(p) = path {
        let body = text::write_poset(host) + &text::write_family(family);
        std::fs::write(p, body).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

fn realizer_text(report: &RealizerReport, host_len: usize, size: usize, describe: Vec<String>) -> String {
    let mut text = format!("elements: {host_len}\nfamily size: {size}\n");
    let _ = writeln!(text, "verified: {}", report.verified);
    if !report.unbroken_pairs.is_empty() {
        let _ = writeln!(text, "unbroken pairs: {}", report.unbroken_pairs.len());
        for d in describe {
            let _ = writeln!(text, "  {d}");
        }
    }
    for v in &report.violations {
        let _ = writeln!(text, "member {} ({}): {}", v.member, v.name, v.message);
    }
    text
}

pub fn realize(
    construction: &str,
    ps: &[String],
    t: TruncationSpec,
    complete: bool,
    family: Option<&Path>,
    (rows, cols): (usize, u32),
) -> Result<Outcome> {
    use builders::Side;
    let mut r: AgeRealizer = match construction {
        "ww" => {
            params::<0>(construction, ps)?;
            builders::realizer_age_ww(t)?
        }
        "band" => {
            let [c] = params(construction, ps)?;
            builders::band_realizer(&c, t)?
        }
        "word" => {
            if ps.len() != 1 {
                bail!("word takes one generalized word");
            }
            builders::realize_word(&word(&ps[0])?, t)?
        }
        "cap-left" => {
            let [a, b] = params(construction, ps)?;
            builders::cap_left_realizer(&a, &b, t)?
        }
        "cap-inner" => {
            let [a, b] = params(construction, ps)?;
            builders::cap_inner_realizer(&a, &b, t)?
        }
        "double-outer" | "double-inner" => {
            let [a, b, c] = params(construction, ps)?;
            let side = if construction == "double-outer" { Side::Outer } else { Side::Inner };
            builders::double_cap_realizer(&a, &b, &c, t, side)?
        }
        "partition" => return realize_partition(ps, rows, cols, family),
        other => bail!(
            "unknown construction {other:?}; expected ww, band, word, cap-left, cap-inner, \
             double-outer, double-inner or partition"
        ),
    };
    let added = if complete { r.complete() } else { 0 };
    let summary = r.summary();
    family_file(family, &r.host, &r.family)?;
    let mut text = format!("word: {}\ntruncation: B={} R={}\n", r.word, t.omega_cap, t.repeat_cap);
    text += &realizer_text(&summary.report, r.host.len(), r.size(), summary.report.describe_pairs(&r.host, 10));
    for (step, k) in &summary.provenance {
        writeln!(text, "  {step}: {k}")?;
    }
    if complete {
        writeln!(text, "completion members added: {added}")?;
    }
    let ok = summary.report.verified;
    let report = json!({ "construction": construction, "params": ps, "completion_members": added, "summary": summary });
    Ok(Outcome { status: Status::of(ok), text, report })
}

fn realize_partition(ps: &[String], rows: usize, cols: u32, family: Option<&Path>) -> Result<Outcome> {
    if ps.len() != 1 {
        bail!("partition takes one generalized word");
    }
    let w = word(&ps[0])?;
    let shape = classifier::normalize_partition_word(&w)?;
    let r = builders::partition_age_realizer(&shape, rows, cols)?;
    let rep = r.verify();
    family_file(family, &r.host, &r.family)?;
    let mut text = format!(
        "word: {w}\nshape: k={} lambda={} ell={}\nbox: {rows}x{cols}\n",
        shape.k,
        shape.lambda,
        shape.ell
    );
    text += &realizer_text(&rep, r.host.len(), r.family.len(), rep.describe_pairs(&r.host, 10));
    let report = json!({
        "word": w.to_string(), "shape": shape, "box": [rows, cols],
        "elements": r.host.len(), "family_size": r.family.len(), "report": rep,
    });
    Ok(Outcome { status: Status::of(rep.verified), text, report })
}

pub fn verify(file: &Path) -> Result<Outcome> {
    let (host, family) = read_poset(file)?;
    let rep = verify_realizer(&host, &family);
    let text = realizer_text(&rep, host.len(), family.len(), rep.describe_pairs(&host, 10));
    let report = json!({ "file": file.display().to_string(), "elements": host.len(), "family_size": family.len(), "report": rep });
    Ok(Outcome { status: Status::of(rep.verified), text, report })
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Forbidden(f) => {
            let pos: Vec<String> = f.positions.iter().map(|p| p.to_string()).collect();
            format!("contains Age({}) at positions {}; crowns: {}", f.age.word(), pos.join(","), f.crown_family)
        }
        Witness::Template(m) => format!("inside Age({})", m.word()),
        Witness::PartitionBound { shape, bound } => {
            format!("inside Age({}), dimension at most {bound}", shape.word())
        }
        Witness::PartitionCrown { position, crown_family } => {
            format!("w^w at position {position} contains every partition; crowns: {crown_family}")
        }
        Witness::Unmatched { pattern } => format!("no forbidden age; no maximal template for pattern {pattern}"),
    }
}

fn report_text(title: &str, r: &ClassificationReport) -> String {
    let mut s = format!("{title}: {:?}", r.verdict);
    if let Some(b) = r.bound {
        let _ = write!(s, " (dimension at most {b})");
    }
    s.push('\n');
    for c in &r.words {
        let _ = writeln!(s, "  [{}] {:?}: {}", c.word, c.verdict, witness_text(&c.witness));
    }
    s
}

pub fn classify(words: &[String]) -> Result<Outcome> {
    let ws: Vec<GeneralizedWord> = words.iter().map(|w| word(w)).collect::<Result<_>>()?;
    let comps = classifier::classify_composition_downset(&ws);
    let parts = classifier::classify_partition_downset(&ws);
    let text = report_text("compositions", &comps) + &report_text("partitions", &parts);
    let report = json!({ "compositions": comps, "partitions": parts });
    Ok(Outcome { status: Status::Pass, text, report })
}

pub fn render(kind: &str, object: Option<&str>, age: Option<&str>, t: TruncationSpec) -> Result<Outcome> {
    let need = || object.context("missing the object to draw");
    let text = match kind {
        "skyline" => render::skyline(&comp(need()?)?),
        "word" => render::word_skyline(&word(need()?)?, t.omega_cap),
        "ferrers" => {
            let p: Partition = need()?.parse().context("cannot read partition")?;
            render::ferrers(&p)
        }
        "hasse" => {
            let host = match (age, object) {
                (Some(w), _) => builders::truncated_host(&word(w)?, t),
                (None, Some(f)) => read_poset(Path::new(f))?.0,
                (None, None) => bail!("give --age WORD or a poset file"),
            };
            hasse(&host)
        }
        other => bail!("unknown drawing {other:?}; expected skyline, word, ferrers or hasse"),
    };
    let report = json!({ "kind": kind, "drawing": text });
    Ok(Outcome { status: Status::Pass, text, report })
}

/// Upper covers of every element, one line each.
fn hasse(p: &CompositionPoset) -> String {
    let mut up = vec![Vec::new(); p.len()];
    for (i, j) in p.covers() {
        up[i].push(show(p.label(j)));
    }
    let mut s = String::new();
    for (i, u) in up.iter().enumerate() {
        let _ = writeln!(s, "{} -> {}", show(p.label(i)), u.join(", "));
    }
    s
}
