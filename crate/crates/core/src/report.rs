//! Versioned JSON and text-table rendering of computation results.

use std::fmt::Write as _;

use serde::Serialize;

use crate::decomp::{ExampleReport, LimitsReport, Verdict, VerifyReport};
use crate::fusion::{ClassFlags, FusionSystem, SaturationReport};

/// Version of the JSON layout; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    TextTable,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text-table" | "table" => Ok(Format::TextTable),
            _ => Err(crate::Error::Input(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub index: usize,
    pub order: usize,
    pub representative: String,
    pub members: usize,
    #[serde(flatten)]
    pub flags: ClassFlags,
    pub p_centric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRow {
    pub axiom: String,
    pub subgroup: String,
    pub morphism: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Report {
    /// One limits report per coefficient degree.
    Limits { reports: Vec<LimitsReport> },
    Stable { system: String, prime: u32, dims: Vec<usize> },
    Classify { system: String, prime: u32, classes: Vec<ClassRow> },
    Saturation { system: String, checked: usize, saturated: bool, witness: Option<WitnessRow> },
    Verify(VerifyReport),
    Example(ExampleReport),
}

impl Report {
    pub fn classify(f: &FusionSystem, flags: &[ClassFlags]) -> Report {
        let g = f.group();
        let classes = f
            .classes()
            .iter()
            .zip(flags)
            .enumerate()
            .map(|(index, (c, &flags))| ClassRow {
                index,
                order: c.order(),
                representative: c.representative.describe(g),
                members: c.members.len(),
                flags,
                p_centric: f.is_p_centric_in_ambient(&c.representative),
            })
            .collect();
        Report::Classify { system: f.name().to_string(), prime: f.prime().get(), classes }
    }

    pub fn saturation(f: &FusionSystem, r: &SaturationReport) -> Report {
        let g = f.group();
        let witness = r.witness.as_ref().map(|w| WitnessRow {
            axiom: w.axiom.to_string(),
            subgroup: w.subgroup.describe(g),
            morphism: w.morphism.as_ref().map(|m| {
                m.source().gens().iter().map(|&x| format!("{} -> {}", g.cycle_string(x), g.cycle_string(m.apply(x)))).collect()
            }),
            detail: w.detail.clone(),
        });
        Report::Saturation { system: f.name().to_string(), checked: r.checked, saturated: r.is_saturated(), witness }
    }

    /// Whether the report carries no failing verdict.
    pub fn passed(&self) -> bool {
        match self {
            Report::Limits { .. } | Report::Stable { .. } | Report::Classify { .. } => true,
            Report::Saturation { saturated, .. } => *saturated,
            Report::Verify(v) => v.verdict == Verdict::Pass,
            Report::Example(e) => e.passed(),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a Report,
}

#[derive(Serialize)]
struct Empty {
    schema_version: u32,
}

/// Renders a report; `None` is the empty report. Output ends with a newline.
pub fn emit(report: Option<&Report>, format: Format) -> String {
    match (report, format) {
        (None, Format::Json) => to_json(&Empty { schema_version: SCHEMA_VERSION }),
        (None, Format::TextTable) => format!("schema {SCHEMA_VERSION}: empty report\n"),
        (Some(r), Format::Json) => to_json(&Envelope { schema_version: SCHEMA_VERSION, report: r }),
        (Some(r), Format::TextTable) => table(r),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn dims_table(out: &mut String, rows: &[(String, &[usize])]) {
    let cols = rows.iter().map(|(_, d)| d.len()).max().unwrap_or(0);
    let label = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0).max(5);
    let _ = write!(out, "{:<label$}", "n \\ i");
    for i in 0..cols {
        let _ = write!(out, " {i:>4}");
    }
    out.push('\n');
    for (k, d) in rows {
        let _ = write!(out, "{k:<label$}");
        for v in d.iter() {
            let _ = write!(out, " {v:>4}");
        }
        out.push('\n');
    }
}

fn table(r: &Report) -> String {
    let mut out = String::new();
    match r {
        Report::Limits { reports } => {
            if let Some(first) = reports.first() {
                let _ = writeln!(out, "lim^i over {} ({}, {} objects)", first.category, first.collection, first.objects);
            }
            let rows: Vec<(String, &[usize])> = reports
                .iter()
                .map(|x| (x.coefficients.clone(), x.dims.as_slice()))
                .collect();
            dims_table(&mut out, &rows);
        }
        Report::Stable { system, prime, dims } => {
            let _ = writeln!(out, "dim H^n({system}; F_{prime})");
            for (n, d) in dims.iter().enumerate() {
                let _ = writeln!(out, "{n:>3} {d:>4}");
            }
        }
        Report::Classify { system, classes, .. } => {
            let _ = writeln!(out, "classes of {system}");
            let _ = writeln!(out, "{:>3} {:>5} {:>7} {:<4} {:<4} {:<4} {:<4} {:<4} {:<4} {:<4}  representative", "#", "order", "members", "fn", "fc", "fa", "rec", "c", "r", "cr");
            let yn = |b: bool| if b { "y" } else { "-" };
            for c in classes {
                let f = &c.flags;
                let _ = writeln!(
                    out,
                    "{:>3} {:>5} {:>7} {:<4} {:<4} {:<4} {:<4} {:<4} {:<4} {:<4}  {}",
                    c.index,
                    c.order,
                    c.members,
                    yn(f.fully_normalized),
                    yn(f.fully_centralized),
                    yn(f.fully_automized),
                    yn(f.receptive),
                    yn(f.centric),
                    yn(f.radical),
                    yn(f.centric_radical),
                    c.representative
                );
            }
        }
        Report::Saturation { system, checked, saturated, witness } => {
            let _ = writeln!(out, "{system}: {} ({checked} subgroups checked)", if *saturated { "saturated" } else { "not saturated" });
            if let Some(w) = witness {
                let _ = writeln!(out, "axiom: {}\nsubgroup: {}\ndetail: {}", w.axiom, w.subgroup, w.detail);
                if let Some(m) = &w.morphism {
                    let _ = writeln!(out, "morphism: {}", m.join(", "));
                }
            }
        }
        Report::Verify(v) => {
            let _ = writeln!(out, "{} on {}: {:?}", v.theorem, v.instance, v.verdict);
            let rows: Vec<(String, &[usize])> = v.dims.iter().map(|(k, d)| (k.clone(), d.as_slice())).collect();
            dims_table(&mut out, &rows);
            for note in &v.notes {
                let _ = writeln!(out, "note: {note}");
            }
        }
        Report::Example(e) => {
            let _ = writeln!(out, "{:>3} {:>5} {:>6} {:>6} {:>7} {:>7} {:>6} {:>8}", "n", "dim", "lim0", "lim1", "F lim0", "F lim>0", "stable", "expected");
            for row in &e.rows {
                let higher: usize = row.fusion_orbit[1..].iter().sum();
                let _ = writeln!(
                    out,
                    "{:>3} {:>5} {:>6} {:>6} {:>7} {:>7} {:>6} {:>8}",
                    row.n, row.dim_h, row.orbit[0], row.orbit[1], row.fusion_orbit[0], higher, row.stable, row.expected
                );
            }
            let _ = writeln!(out, "verdict: {}", if e.passed() { "pass" } else { "fail" });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_only_the_version() {
        assert_eq!(emit(None, Format::Json), format!("{{\n  \"schema_version\": {SCHEMA_VERSION}\n}}\n"));
    }

    #[test]
    fn envelope_is_flat_and_ordered() {
        let r = Report::Stable { system: "F".into(), prime: 3, dims: vec![1, 0] };
        let s = emit(Some(&r), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["kind"], "stable");
        assert!(s.find("schema_version").unwrap() < s.find("kind").unwrap());
        assert!(r.passed());
    }

    #[test]
    fn limits_table_has_degree_columns() {
        let rep = LimitsReport {
            category: "O".into(),
            coefficients: "H^0".into(),
            group: "S3".into(),
            prime: 3,
            collection: "centric".into(),
            objects: 1,
            bound: 2,
            dims: vec![1, 0, 0],
            cache_keys: vec![],
        };
        let t = emit(Some(&Report::Limits { reports: vec![rep] }), Format::TextTable);
        let lines: Vec<&str> = t.lines().collect();
        assert!(lines[1].starts_with("n \\ i"));
        assert!(lines[1].ends_with("   2"));
        assert!(lines[2].starts_with("H^0"));
    }
}
