use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canonical_band;
use crate::algebra::StringAlgebra;
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::poly::Poly;
use crate::repmod::{band_module, direct_sum, string_module, BandCoefficient, Representation};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringEntry {
    pub word: Word,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandEntry {
    pub word: Word,
    pub coeff: BandCoefficient,
    pub mult: usize,
}

/// Summands with multiplicities; words canonical, entries sorted, and
/// `audit[v]` the total dimension they contribute at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub strings: Vec<StringEntry>,
    pub bands: Vec<BandEntry>,
    pub audit: Vec<usize>,
}

pub(super) fn band_cmp(a: &BandEntry, b: &BandEntry) -> Ordering {
    a.word
        .cmp(&b.word)
        .then_with(|| a.coeff.g.canonical_cmp(&b.coeff.g))
        .then(a.coeff.r.cmp(&b.coeff.r))
}

impl DecompositionReport {
    pub fn new(alg: &StringAlgebra, strings: Vec<StringEntry>, bands: Vec<BandEntry>) -> Self {
        let mut audit = vec![0; alg.num_vertices()];
        for s in &strings {
            for v in s.word.vertex_sequence(alg) {
                audit[v] += s.mult;
            }
        }
        for b in &bands {
            let verts = b.word.vertex_sequence(alg);
            for &v in &verts[..verts.len() - 1] {
                audit[v] += b.mult * b.coeff.dim();
            }
        }
        DecompositionReport { strings, bands, audit }
    }

    /// The canonical report of `⊕ M(C) ⊕ ⊕ M(E, V)` for the given summands,
    /// listed with repetition.
    pub fn from_recipe(alg: &StringAlgebra, strings: &[Word], bands: &[(Word, BandCoefficient)]) -> Self {
        let mut s: BTreeMap<Word, usize> = BTreeMap::new();
        for c in strings {
            *s.entry(c.canonical()).or_default() += 1;
        }
        let mut b: Vec<BandEntry> = Vec::new();
        for (e, coeff) in bands {
            let (word, coeff) = canonical_band(e, coeff);
            match b.iter_mut().find(|x| x.word == word && x.coeff == coeff) {
                Some(x) => x.mult += 1,
                None => b.push(BandEntry { word, coeff, mult: 1 }),
            }
        }
        b.sort_by(band_cmp);
        let strings = s.into_iter().map(|(word, mult)| StringEntry { word, mult }).collect();
        Self::new(alg, strings, b)
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty() && self.bands.is_empty()
    }

    pub fn same_summands(&self, other: &DecompositionReport) -> bool {
        self.strings == other.strings && self.bands == other.bands
    }

    /// The report of a direct sum.
    pub fn merge(&self, alg: &StringAlgebra, other: &DecompositionReport) -> DecompositionReport {
        let mut s: BTreeMap<Word, usize> = BTreeMap::new();
        for e in self.strings.iter().chain(&other.strings) {
            *s.entry(e.word.clone()).or_default() += e.mult;
        }
        let mut b: Vec<BandEntry> = Vec::new();
        for e in self.bands.iter().chain(&other.bands) {
            match b.iter_mut().find(|x| x.word == e.word && x.coeff == e.coeff) {
                Some(x) => x.mult += e.mult,
                None => b.push(e.clone()),
            }
        }
        b.sort_by(band_cmp);
        let strings = s.into_iter().map(|(word, mult)| StringEntry { word, mult }).collect();
        Self::new(alg, strings, b)
    }

    /// The module `N` the report describes, summands in report order and
    /// each repeated `mult` times.
    pub fn build(&self, alg: &StringAlgebra, field: FieldSpec) -> Result<Representation> {
        let mut parts = Vec::new();
        for s in &self.strings {
            let m = string_module(alg, field, &s.word)?.rep;
            parts.extend(std::iter::repeat_n(m, s.mult));
        }
        for b in &self.bands {
            let m = band_module(alg, &b.word, &b.coeff)?.rep;
            parts.extend(std::iter::repeat_n(m, b.mult));
        }
        direct_sum(alg, field, &parts)
    }

    pub fn to_json(&self, alg: &StringAlgebra) -> String {
        let file = ReportFile {
            strings: self
                .strings
                .iter()
                .map(|s| StringJson {
                    word: s.word.format(alg),
                    mult: s.mult,
                })
                .collect(),
            bands: self
                .bands
                .iter()
                .map(|b| BandJson {
                    word: b.word.format(alg),
                    poly: b.coeff.g.to_string(),
                    power: b.coeff.r,
                    mult: b.mult,
                })
                .collect(),
            audit: alg.vertices().iter().cloned().zip(self.audit.iter().copied()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("report serialises")
    }

    pub fn from_json(alg: &StringAlgebra, field: FieldSpec, text: &str) -> Result<Self> {
        let file: ReportFile = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("report: {e}")))?;
        let mut strings = Vec::new();
        for s in file.strings {
            let word = Word::parse(alg, &s.word)?;
            if !word.is_finite() || word.canonical() != word || s.mult == 0 {
                return Err(Error::Malformed(format!("string entry {:?} is not canonical", s.word)));
            }
            strings.push(StringEntry { word, mult: s.mult });
        }
        let mut bands = Vec::new();
        for b in file.bands {
            let word = Word::parse(alg, &b.word)?;
            if !matches!(word, Word::Periodic(_)) || word.canonical() != word || b.mult == 0 {
                return Err(Error::Malformed(format!("band entry {:?} is not canonical", b.word)));
            }
            let coeff = BandCoefficient::new(Poly::parse(field, &b.poly)?, b.power)?;
            bands.push(BandEntry {
                word,
                coeff,
                mult: b.mult,
            });
        }
        strings.sort_by(|a, b| a.word.cmp(&b.word));
        bands.sort_by(band_cmp);
        let report = Self::new(alg, strings, bands);
        let audit: Vec<usize> = alg.vertices().iter().map(|v| file.audit.get(v).copied().unwrap_or(0)).collect();
        if audit != report.audit {
            return Err(Error::Malformed("report audit does not match its summands".into()));
        }
        Ok(report)
    }
}

#[derive(Serialize, Deserialize)]
struct ReportFile {
    strings: Vec<StringJson>,
    bands: Vec<BandJson>,
    audit: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct StringJson {
    word: String,
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct BandJson {
    word: String,
    poly: String,
    power: usize,
    mult: usize,
}
