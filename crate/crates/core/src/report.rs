//! The full analysis pipeline and its structured report.
//!
//! A report serializes deterministically: struct fields appear in a fixed
//! order, coordinate vectors follow the chosen echelon bases, and maps are
//! sorted. Stage timings are opt-in because wall-clock values would break
//! byte-identical reruns.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::cohomology_f2;
use crate::complex::SimplicialComplex;
use crate::duality::{verify_pd, wu_profile};
use crate::error::{Error, Result};
use crate::products::ring_of;
use crate::verdict::{ahss_d2, reducibility_verdict, Verdict};

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Skip the dimension-4 d2 stage.
    pub skip_d2: bool,
    /// Record wall-clock stage timings in the report.
    pub timings: bool,
}

/// The orientation character rendered for output: "trivial" or the list of
/// edges carrying the nontrivial value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterRepr {
    Trivial,
    Edges(Vec<[u32; 2]>),
}

impl Serialize for CharacterRepr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Trivial => s.serialize_str("trivial"),
            Self::Edges(edges) => edges.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for CharacterRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Edges(Vec<[u32; 2]>),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) if t == "trivial" => Ok(Self::Trivial),
            Raw::Text(t) => Err(D::Error::custom(format!("unexpected character text {t:?}"))),
            Raw::Edges(e) => Ok(Self::Edges(e)),
        }
    }
}

/// Coordinates that may be inapplicable ("n/a"): the d2 image of the
/// fundamental class outside dimension 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaybeCoords {
    NotApplicable,
    Coords(Vec<u8>),
}

impl Serialize for MaybeCoords {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::NotApplicable => s.serialize_str("n/a"),
            Self::Coords(c) => c.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for MaybeCoords {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Coords(Vec<u8>),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) if t == "n/a" => Ok(Self::NotApplicable),
            Raw::Text(t) => Err(D::Error::custom(format!("unexpected coords text {t:?}"))),
            Raw::Coords(c) => Ok(Self::Coords(c)),
        }
    }
}

/// Structured invariant report; the single output format of the pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub name: String,
    pub dim: usize,
    pub betti_f2: Vec<usize>,
    pub euler: i64,
    pub orientable: Option<bool>,
    pub character: Option<CharacterRepr>,
    pub pd_verified: bool,
    pub wu: Option<Vec<Vec<u8>>>,
    pub sw: Option<Vec<Vec<u8>>>,
    pub sw_spivak: Option<Vec<Vec<u8>>>,
    pub d2_fundamental: MaybeCoords,
    pub verdict: Option<Verdict>,
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

pub const REPORT_SCHEMA: u32 = 1;

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering; sections follow the field order exactly.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let coords = |v: &Option<Vec<Vec<u8>>>| match v {
            None => "n/a".to_string(),
            Some(per_degree) => per_degree
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let bits: Vec<String> = c.iter().map(u8::to_string).collect();
                    format!("deg{k}=[{}]", bits.join(","))
                })
                .collect::<Vec<_>>()
                .join(" "),
        };
        let mut out = String::new();
        writeln!(out, "schema: {}", self.schema).unwrap();
        writeln!(out, "name: {}", self.name).unwrap();
        writeln!(out, "dim: {}", self.dim).unwrap();
        writeln!(
            out,
            "betti_f2: {}",
            self.betti_f2
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        )
        .unwrap();
        writeln!(out, "euler: {}", self.euler).unwrap();
        writeln!(
            out,
            "orientable: {}",
            self.orientable
                .map_or_else(|| "n/a".to_string(), |b| b.to_string())
        )
        .unwrap();
        let character = match &self.character {
            None => "n/a".to_string(),
            Some(CharacterRepr::Trivial) => "trivial".to_string(),
            Some(CharacterRepr::Edges(edges)) => edges
                .iter()
                .map(|[a, b]| format!("{a}-{b}"))
                .collect::<Vec<_>>()
                .join(" "),
        };
        writeln!(out, "character: {character}").unwrap();
        writeln!(out, "pd_verified: {}", self.pd_verified).unwrap();
        writeln!(out, "wu: {}", coords(&self.wu)).unwrap();
        writeln!(out, "sw: {}", coords(&self.sw)).unwrap();
        writeln!(out, "sw_spivak: {}", coords(&self.sw_spivak)).unwrap();
        let d2 = match &self.d2_fundamental {
            MaybeCoords::NotApplicable => "n/a".to_string(),
            MaybeCoords::Coords(c) => format!(
                "[{}]",
                c.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
            ),
        };
        writeln!(out, "d2_fundamental: {d2}").unwrap();
        match &self.verdict {
            None => writeln!(out, "verdict: n/a").unwrap(),
            Some(v) => {
                let outcome = match v.outcome {
                    crate::verdict::Outcome::Reducible => "reducible",
                    crate::verdict::Outcome::Undetermined => "undetermined",
                };
                let rule = v.rule.map_or("-", |r| r.as_str());
                writeln!(out, "verdict: {outcome} rule={rule}").unwrap();
                writeln!(out, "citation: {}", v.citation).unwrap();
                if let Some(notes) = &v.notes {
                    writeln!(out, "notes: {notes}").unwrap();
                }
            }
        }
        if let Some(timings) = &self.timings_ms {
            let parts: Vec<String> = timings.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
            writeln!(out, "timings: {}", parts.join(" ")).unwrap();
        }
        out
    }
}

/// A finished analysis: the report, plus the duality failure that made it
/// partial, if any.
pub struct Analysis {
    pub report: Report,
    /// Why Z/2 duality verification stopped, when `pd_verified` is false.
    pub pd_failure: Option<Error>,
}

fn is_partial_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NotConnected
            | Error::NoFundamentalClass { .. }
            | Error::NoOrientationCharacter
            | Error::AmbiguousCharacter { .. }
            | Error::DualityFails { .. }
    )
}

/// Run the full pipeline: bases and ring, duality certificate, Wu profile,
/// d2 stage in dimension 4, verdict. A complex that fails duality
/// verification yields a partial report rather than an error.
pub fn analyze(complex: &SimplicialComplex, opts: &AnalyzeOptions) -> Result<Analysis> {
    let mut timings: BTreeMap<String, u64> = BTreeMap::new();
    let clock = Instant::now();
    let euler = complex.euler_characteristic();
    let n = complex.dim();

    let betti_only = || -> Result<Vec<usize>> {
        (0..=n)
            .map(|k| Ok(cohomology_f2(complex, k)?.dim()))
            .collect()
    };
    let partial = |betti: Vec<usize>, failure: Error, timings: BTreeMap<String, u64>| Analysis {
        report: Report {
            schema: REPORT_SCHEMA,
            name: complex.name().to_string(),
            dim: n,
            betti_f2: betti,
            euler,
            orientable: None,
            character: None,
            pd_verified: false,
            wu: None,
            sw: None,
            sw_spivak: None,
            d2_fundamental: MaybeCoords::NotApplicable,
            verdict: None,
            timings_ms: opts.timings.then_some(timings),
        },
        pd_failure: Some(failure),
    };

    if !complex.is_connected() {
        let betti = betti_only()?;
        return Ok(partial(betti, Error::NotConnected, timings));
    }

    let stage_start = Instant::now();
    let ring = ring_of(complex)?;
    timings.insert("ring".into(), stage_start.elapsed().as_millis() as u64);
    let betti = ring.betti();

    let stage_start = Instant::now();
    let cert = match verify_pd(complex, &ring) {
        Ok(cert) => cert,
        Err(e) if is_partial_failure(&e) => {
            timings.insert("duality".into(), stage_start.elapsed().as_millis() as u64);
            timings.insert("total".into(), clock.elapsed().as_millis() as u64);
            return Ok(partial(betti, e, timings));
        }
        Err(e) => return Err(e),
    };
    timings.insert("duality".into(), stage_start.elapsed().as_millis() as u64);

    let stage_start = Instant::now();
    let profile = wu_profile(complex, &ring, &cert);
    timings.insert("wu".into(), stage_start.elapsed().as_millis() as u64);

    let d2_fundamental = if n == 4 && !opts.skip_d2 {
        let stage_start = Instant::now();
        let d2 = ahss_d2(complex, &ring, &cert, &profile)?;
        timings.insert("d2".into(), stage_start.elapsed().as_millis() as u64);
        MaybeCoords::Coords(d2.d2_of_fundamental.to_bytes())
    } else {
        MaybeCoords::NotApplicable
    };

    let stage_start = Instant::now();
    let verdict = reducibility_verdict(complex, &cert);
    timings.insert("verdict".into(), stage_start.elapsed().as_millis() as u64);
    timings.insert("total".into(), clock.elapsed().as_millis() as u64);

    let character = if cert.orientable {
        CharacterRepr::Trivial
    } else {
        CharacterRepr::Edges(cert.character.support(complex))
    };

    Ok(Analysis {
        report: Report {
            schema: REPORT_SCHEMA,
            name: complex.name().to_string(),
            dim: n,
            betti_f2: betti,
            euler,
            orientable: Some(cert.orientable),
            character: Some(character),
            pd_verified: true,
            wu: Some(profile.v.to_bytes()),
            sw: Some(profile.w.to_bytes()),
            sw_spivak: Some(profile.w_spivak.to_bytes()),
            d2_fundamental,
            verdict: Some(verdict),
            timings_ms: opts.timings.then_some(timings),
        },
        pd_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::verdict::RuleId;

    #[test]
    fn rp2_report_values() {
        let entry = catalog::get("rp2").unwrap();
        let analysis = analyze(&entry.complex, &AnalyzeOptions::default()).unwrap();
        let r = &analysis.report;
        assert!(r.pd_verified);
        assert_eq!(r.betti_f2, vec![1, 1, 1]);
        assert_eq!(r.euler, 1);
        assert_eq!(r.orientable, Some(false));
        assert_eq!(r.sw, Some(vec![vec![1], vec![1], vec![1]]));
        assert_eq!(r.sw_spivak, Some(vec![vec![1], vec![1], vec![0]]));
        assert_eq!(r.d2_fundamental, MaybeCoords::NotApplicable);
        let v = r.verdict.as_ref().unwrap();
        assert_eq!(v.rule, Some(RuleId::Dim2Rule));
        assert!(analysis.pd_failure.is_none());
    }

    #[test]
    fn solid_simplex_partial_report() {
        let entry = catalog::get("solid_delta3").unwrap();
        let analysis = analyze(&entry.complex, &AnalyzeOptions::default()).unwrap();
        let r = &analysis.report;
        assert!(!r.pd_verified);
        assert_eq!(r.betti_f2, vec![1, 0, 0, 0]);
        assert!(r.wu.is_none());
        assert!(r.verdict.is_none());
        assert!(matches!(
            analysis.pd_failure,
            Some(Error::NoFundamentalClass { .. })
        ));
    }

    #[test]
    fn report_json_roundtrip() {
        let entry = catalog::get("s2").unwrap();
        let analysis = analyze(&entry.complex, &AnalyzeOptions::default()).unwrap();
        let json = analysis.report.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, analysis.report);
        // timings are omitted by default, so serialization is reproducible
        assert_eq!(json, analysis.report.to_json());
        assert!(json.contains("\"schema\": 1"));
    }

    #[test]
    fn reports_are_deterministic_across_runs() {
        let entry = catalog::get("klein").unwrap();
        let a = analyze(&entry.complex, &AnalyzeOptions::default()).unwrap();
        let b = analyze(&entry.complex, &AnalyzeOptions::default()).unwrap();
        assert_eq!(a.report.to_json(), b.report.to_json());
        assert_eq!(a.report.to_text(), b.report.to_text());
    }

    #[test]
    fn timings_are_opt_in() {
        let entry = catalog::get("s1").unwrap();
        let with = analyze(
            &entry.complex,
            &AnalyzeOptions {
                timings: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(with.report.timings_ms.is_some());
        let without = analyze(&entry.complex, &AnalyzeOptions::default()).unwrap();
        assert!(without.report.timings_ms.is_none());
    }
}
