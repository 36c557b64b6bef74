//! JSON and CSV renderings of results. Field order is fixed so output is
//! byte-identical across runs.

use serde::Serialize;

use bott_core::decompose::Decomposition;
use bott_core::invariants::{InvariantFingerprint, OddHeight};
use bott_core::BottMatrix;

use crate::classify::ClassificationSummary;
use crate::format::{encode_hex, FormatError};

#[derive(Serialize)]
struct ClassRow {
    canon: String,
    members: u64,
    orientable: bool,
    symplectic: bool,
}

#[derive(Serialize)]
struct SummaryJson {
    n: usize,
    #[serde(rename = "D")]
    d: usize,
    #[serde(rename = "O")]
    o: usize,
    #[serde(rename = "S")]
    s: usize,
    classes: Vec<ClassRow>,
}

fn rows(summary: &ClassificationSummary) -> Result<Vec<ClassRow>, FormatError> {
    summary
        .records
        .iter()
        .map(|r| {
            Ok(ClassRow {
                canon: encode_hex(&r.canonical)?,
                members: r.member_count,
                orientable: r.orientable,
                symplectic: r.symplectic,
            })
        })
        .collect()
}

pub fn summary_json(summary: &ClassificationSummary) -> Result<String, FormatError> {
    let doc = SummaryJson {
        n: summary.n,
        d: summary.d,
        o: summary.o,
        s: summary.s,
        classes: rows(summary)?,
    };
    Ok(serde_json::to_string(&doc).expect("plain data serializes"))
}

pub fn summary_csv(summary: &ClassificationSummary) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows(summary)? {
        w.serialize(row).expect("in-memory csv write");
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8"))
}

#[derive(Serialize)]
#[serde(untagged)]
enum Height {
    Finite(usize),
    Infinite(&'static str),
}

#[derive(Serialize)]
struct FingerprintJson<'a> {
    n: usize,
    #[serde(rename = "type")]
    type_vector: &'a [usize],
    rank: usize,
    odd_height: Height,
    sibling_profile: &'a [Vec<usize>],
    cutrank_levels: &'a [usize],
    consecutive_ranks: &'a [usize],
    betti: &'a [u64],
    orientable: bool,
    symplectic: bool,
}

pub fn fingerprint_json(n: usize, f: &InvariantFingerprint) -> String {
    let doc = FingerprintJson {
        n,
        type_vector: &f.type_vector,
        rank: f.rank,
        odd_height: match f.odd_height {
            OddHeight::Finite(k) => Height::Finite(k),
            OddHeight::Infinite => Height::Infinite("inf"),
        },
        sibling_profile: &f.sibling_profile,
        cutrank_levels: &f.cutrank_levels,
        consecutive_ranks: &f.consecutive_ranks,
        betti: &f.betti,
        orientable: f.orientable,
        symplectic: f.symplectic,
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

#[derive(Serialize)]
struct DecompositionJson {
    isolated: usize,
    factors: Vec<String>,
}

pub fn decomposition_json(d: &Decomposition) -> Result<String, FormatError> {
    let factors = d
        .factors
        .iter()
        .map(|f| encode_hex(&f.canonical))
        .collect::<Result<_, _>>()?;
    Ok(serde_json::to_string(&DecompositionJson {
        isolated: d.isolated_count,
        factors,
    })
    .expect("plain data serializes"))
}

pub fn hex_list(ms: impl IntoIterator<Item = BottMatrix>) -> Result<Vec<String>, FormatError> {
    ms.into_iter().map(|m| encode_hex(&m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_all, ClassifyOptions};
    use bott_core::invariants::fingerprint;

    #[test]
    fn summary_shape() {
        let s = classify_all(2, ClassifyOptions::default()).unwrap();
        assert_eq!(
            summary_json(&s).unwrap(),
            r#"{"n":2,"D":2,"O":1,"S":1,"classes":[{"canon":"2:0","members":1,"orientable":true,"symplectic":true},{"canon":"2:1","members":1,"orientable":false,"symplectic":false}]}"#
        );
        assert_eq!(
            summary_csv(&s).unwrap(),
            "canon,members,orientable,symplectic\n2:0,1,true,true\n2:1,1,false,false\n"
        );
    }

    #[test]
    fn fingerprint_shape() {
        let z = BottMatrix::zero(2).unwrap();
        assert_eq!(
            fingerprint_json(2, &fingerprint(&z).unwrap()),
            r#"{"n":2,"type":[2,0],"rank":0,"odd_height":"inf","sibling_profile":[[2]],"cutrank_levels":[0,0],"consecutive_ranks":[],"betti":[1,2,1],"orientable":true,"symplectic":true}"#
        );
    }
}
