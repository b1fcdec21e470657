//! Text, JSON and CSV renderings of engine results.

use std::fmt::Write as _;

use serde::Serialize;

use recipsym::bounds::Enclosure;
use recipsym::poly::Polynomial;
use recipsym::rational::{int, to_decimal, Fraction, Rational};
use recipsym::symfunc::{SigmaTable, TableRow};
use recipsym::verify::{sigma_label, Certificate, ConjectureReport, Hit, SweepReport};

use super::{Failure, Format};

const DIGITS: usize = 12;

/// `p/q (≈ d) (tag)` or `m (integer)`.
pub fn describe(value: &Rational) -> String {
    if value.is_integer() {
        return format!("{} (integer)", Fraction(value));
    }
    let tag = if *value > int(1) {
        "> 1"
    } else if *value < int(0) {
        "< 0"
    } else {
        "< 1"
    };
    format!("{} (≈ {}) ({tag})", Fraction(value), to_decimal(value, DIGITS))
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Failure::Other(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Other(e.to_string()))
}

#[derive(Serialize)]
pub struct ComputeOutput {
    poly: Polynomial,
    n: u64,
    engine: &'static str,
    values: Vec<TableRow>,
}

pub fn compute(
    f: &Polynomial,
    n: u64,
    k: Option<usize>,
    engine: &'static str,
    column: &[Rational],
) -> ComputeOutput {
    let ks = match k {
        Some(k) => k..=k,
        None => 1..=n as usize,
    };
    let values = ks
        .map(|k| {
            let value = column[k].clone();
            TableRow {
                k,
                n,
                is_integer: value.is_integer(),
                value,
            }
        })
        .collect();
    ComputeOutput {
        poly: f.clone(),
        n,
        engine,
        values,
    }
}

impl ComputeOutput {
    pub fn format(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => json(self),
            Format::Csv => csv(&self.values),
            Format::Text => Ok(self
                .values
                .iter()
                .map(|r| format!("σ_{} = {}\n", r.k, describe(&r.value)))
                .collect()),
        }
    }
}

#[derive(Serialize)]
pub struct TableOutput {
    poly: Polynomial,
    n_max: u64,
    rows: Vec<TableRow>,
}

pub fn table(t: &SigmaTable) -> TableOutput {
    TableOutput {
        poly: t.poly().clone(),
        n_max: t.n_max(),
        rows: t.rows().collect(),
    }
}

impl TableOutput {
    pub fn format(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => json(self),
            Format::Csv => csv(&self.rows),
            Format::Text => {
                let mut s = format!("f = {}\n", self.poly);
                for r in &self.rows {
                    let _ = writeln!(s, "{:>10} = {}", sigma_label(r.k, r.n), describe(&r.value));
                }
                Ok(s)
            }
        }
    }
}

#[derive(Serialize)]
struct StepRow<'a> {
    step: usize,
    lhs: &'a str,
    relation: &'static str,
    rhs: &'a str,
    lhs_upper: String,
    rhs_lower: String,
    description: &'a str,
}

pub fn certificate(c: &Certificate, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(c),
        Format::Csv => csv(c.bound_chain.iter().enumerate().map(|(i, s)| StepRow {
            step: i + 1,
            lhs: s.lhs.label(),
            relation: s.relation.symbol(),
            rhs: s.rhs.label(),
            lhs_upper: Fraction(s.lhs.upper()).to_string(),
            rhs_lower: Fraction(s.rhs.lower()).to_string(),
            description: &s.description,
        })),
        Format::Text => {
            let label = sigma_label(c.k, c.n);
            let mut s = format!("f = {}, case {}\n", c.poly, c.case_tag);
            let _ = writeln!(s, "{label} = {}", describe(&c.value));
            let mut terms = Vec::new();
            for step in &c.bound_chain {
                if terms.is_empty() {
                    terms.push(step.lhs.clone());
                }
                terms.push(step.rhs.clone());
            }
            // bare constants like 0 and 1 need no legend
            for t in &terms {
                if t.label() != label && t.to_string() != t.label() {
                    let _ = writeln!(s, "  {t}");
                }
            }
            for step in &c.bound_chain {
                let _ = writeln!(s, "  {step}");
            }
            match c.conclusion.bounds() {
                Some((lo, hi)) => {
                    let _ = writeln!(s, "{lo} < {label} < {hi}: not an integer");
                }
                None => {
                    let _ = writeln!(s, "{label} = 1");
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct Exceptional<'a> {
    poly: &'a Polynomial,
    k: usize,
    n: u64,
    #[serde(with = "recipsym::rational::serde_fraction")]
    value: &'a Rational,
    exceptional: bool,
}

pub fn exceptional(
    f: &Polynomial,
    k: usize,
    n: u64,
    value: &Rational,
    format: Format,
) -> Result<String, Failure> {
    let row = Exceptional {
        poly: f,
        k,
        n,
        value,
        exceptional: true,
    };
    match format {
        Format::Json => json(&row),
        Format::Csv => csv([row]),
        Format::Text => Ok(format!(
            "{} = {} for f = {f}: the exceptional case x^m, k = n = 1\n",
            sigma_label(k, n),
            describe(value)
        )),
    }
}

pub fn enclosure(e: &Enclosure, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(e),
        Format::Csv => csv([e]),
        Format::Text => Ok(format!(
            "{} ∈ [{}, {}] (N = {}, width ≈ {})\n",
            e.constant.symbol(),
            to_decimal(&e.lo, 20),
            to_decimal(&e.hi, 20),
            e.terms,
            to_decimal(&e.width(), 3)
        )),
    }
}

#[derive(Serialize)]
struct HitRow {
    poly: String,
    k: usize,
    n: u64,
    value: String,
    expected: bool,
}

fn hit_rows<'a>(hits: &'a [Hit], unexpected: &'a [Hit]) -> impl Iterator<Item = HitRow> + 'a {
    hits.iter().map(move |h| HitRow {
        poly: h.poly.render(),
        k: h.k,
        n: h.n,
        value: Fraction(&h.value).to_string(),
        expected: !unexpected.contains(h),
    })
}

fn write_hit(s: &mut String, h: &Hit, note: &str) {
    let _ = writeln!(
        s,
        "  f = {}: {} = {}{note}",
        h.poly,
        sigma_label(h.k, h.n),
        Fraction(&h.value)
    );
}

pub fn sweep(r: &SweepReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv(hit_rows(&r.hits, &r.unexpected)),
        Format::Text => {
            let mut s = format!("family: {}\n", r.family);
            let ranges: Vec<String> = r.ranges.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(s, "ranges: {}", ranges.join(", "));
            let _ = writeln!(s, "instances checked: {}", r.instances_checked);
            let _ = writeln!(
                s,
                "integer hits: {} ({} unexpected)",
                r.hits.len(),
                r.unexpected.len()
            );
            for h in &r.hits {
                let note = if r.unexpected.contains(h) { "  UNEXPECTED" } else { "" };
                write_hit(&mut s, h, note);
            }
            let _ = writeln!(s, "wall time: {:.3?}", r.wall_time);
            Ok(s)
        }
    }
}

pub fn conjecture(r: &ConjectureReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv(hit_rows(&r.hits, &[])),
        Format::Text => {
            let mut s = format!("f = {}\n", r.poly);
            let _ = writeln!(s, "instances checked: {}", r.instances_checked);
            let _ = writeln!(s, "integer hits: {}", r.hits.len());
            for h in &r.hits {
                write_hit(&mut s, h, "");
            }
            match r.last_hit_n {
                Some(n) => {
                    let _ = writeln!(s, "last hit at n = {n}");
                }
                None => s.push_str("no hits\n"),
            }
            let _ = writeln!(s, "candidate N = {} ({})", r.candidate_n, r.note);
            Ok(s)
        }
    }
}
