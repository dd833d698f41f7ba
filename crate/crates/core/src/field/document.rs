//! Field-document ingestion and emission.
//!
//! The document is a JSON file with keys `name`, `truncation`,
//! `milnor{dims, basis, rho, mult[{deg_a, deg_b, table}]}` and optional
//! `integral{cells[{p, q, free_rank, torsion, pr_matrix, divisible}],
//! flags{beilinson_soule, zero_cells}}`. The mult tables are 3-index 0/1
//! tensors indexed (a-basis, b-basis, product-basis). Load → emit → load is
//! the identity on valid documents.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldPresentation, IntegralCell, MultTable};
use crate::linalg::{F2Vec, FgAbGroup, IntMatrix};

#[derive(Serialize, Deserialize)]
struct FieldDocument {
    name: String,
    truncation: i64,
    milnor: MilnorDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    integral: Option<IntegralDocument>,
}

#[derive(Serialize, Deserialize)]
struct MilnorDocument {
    dims: Vec<usize>,
    basis: Vec<Vec<String>>,
    rho: Vec<u8>,
    mult: Vec<MultDocument>,
}

#[derive(Serialize, Deserialize)]
struct MultDocument {
    deg_a: usize,
    deg_b: usize,
    /// table[i][j] = 0/1 coordinates of e_i·e_j in the product basis.
    table: Vec<Vec<Vec<u8>>>,
}

#[derive(Serialize, Deserialize)]
struct IntegralDocument {
    cells: Vec<CellDocument>,
    flags: FlagsDocument,
}

#[derive(Serialize, Deserialize)]
struct CellDocument {
    p: i64,
    q: i64,
    free_rank: usize,
    torsion: Vec<u64>,
    pr_matrix: Vec<Vec<i64>>,
    divisible: bool,
}

#[derive(Serialize, Deserialize)]
struct FlagsDocument {
    beilinson_soule: bool,
    zero_cells: Vec<[i64; 2]>,
}

fn vec_to_f2(bits: &[u8]) -> F2Vec {
    F2Vec::from_bits(bits)
}

fn f2_to_vec(v: &F2Vec) -> Vec<u8> {
    v.iter_bits().map(u8::from).collect()
}

/// Parses and fully validates a field document from JSON text.
pub fn load_field_json(text: &str) -> Result<FieldPresentation> {
    let doc: FieldDocument =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
    load_document(doc)
}

fn load_document(doc: FieldDocument) -> Result<FieldPresentation> {
    let dims = doc.milnor.dims;
    let mut mult = BTreeMap::new();
    for m in doc.milnor.mult {
        let (a, b) = (m.deg_a, m.deg_b);
        if a >= dims.len() || b >= dims.len() || a + b >= dims.len() {
            return Err(Error::Schema(format!(
                "mult table ({a},{b}) outside the truncation"
            )));
        }
        if m.table.len() != dims[a] {
            return Err(Error::Schema(format!(
                "mult table ({a},{b}) has {} rows, expected {}",
                m.table.len(),
                dims[a]
            )));
        }
        let mut entries = Vec::with_capacity(dims[a] * dims[b]);
        for row in &m.table {
            if row.len() != dims[b] {
                return Err(Error::Schema(format!(
                    "mult table ({a},{b}) row has {} columns, expected {}",
                    row.len(),
                    dims[b]
                )));
            }
            for entry in row {
                if entry.len() != dims[a + b] {
                    return Err(Error::Schema(format!(
                        "mult table ({a},{b}) entry has length {}, expected {}",
                        entry.len(),
                        dims[a + b]
                    )));
                }
                entries.push(vec_to_f2(entry));
            }
        }
        if mult
            .insert(
                (a, b),
                MultTable {
                    rows: dims[a],
                    cols: dims[b],
                    entries,
                },
            )
            .is_some()
        {
            return Err(Error::Schema(format!("duplicate mult table ({a},{b})")));
        }
    }

    let mut integral_cells = BTreeMap::new();
    let mut zero_cells = BTreeSet::new();
    let mut beilinson_soule = false;
    if let Some(integral) = doc.integral {
        for c in integral.cells {
            let rows = c.pr_matrix.len();
            let cols = c.pr_matrix.first().map_or(0, |r| r.len());
            let mut pr = IntMatrix::zero(rows, cols);
            for (i, row) in c.pr_matrix.iter().enumerate() {
                if row.len() != cols {
                    return Err(Error::Schema(format!(
                        "ragged pr matrix in cell ({},{})",
                        c.p, c.q
                    )));
                }
                for (j, &e) in row.iter().enumerate() {
                    pr.set(i, j, BigInt::from(e));
                }
            }
            for d in &c.torsion {
                if *d < 2 {
                    return Err(Error::Schema(format!(
                        "invariant factor {d} < 2 in cell ({},{})",
                        c.p, c.q
                    )));
                }
            }
            let group = FgAbGroup {
                free_rank: c.free_rank,
                torsion: c.torsion.iter().map(|&d| BigInt::from(d)).collect(),
            };
            let canon = FgAbGroup::from_orders(
                &group
                    .torsion
                    .iter()
                    .cloned()
                    .chain(std::iter::repeat_n(BigInt::from(0), group.free_rank))
                    .collect::<Vec<_>>(),
            );
            if canon != group {
                return Err(Error::Schema(format!(
                    "torsion of cell ({},{}) is not in invariant-factor form",
                    c.p, c.q
                )));
            }
            if integral_cells
                .insert(
                    (c.p, c.q),
                    IntegralCell {
                        p: c.p,
                        q: c.q,
                        group,
                        pr_matrix: pr,
                        divisible_part: c.divisible,
                    },
                )
                .is_some()
            {
                return Err(Error::Schema(format!(
                    "duplicate integral cell ({},{})",
                    c.p, c.q
                )));
            }
        }
        beilinson_soule = integral.flags.beilinson_soule;
        zero_cells = integral.flags.zero_cells.iter().map(|&[p, q]| (p, q)).collect();
    }

    let field = FieldPresentation {
        name: doc.name,
        truncation: doc.truncation,
        dims,
        basis_labels: doc.milnor.basis,
        rho: vec_to_f2(&doc.milnor.rho),
        mult,
        integral_cells,
        beilinson_soule,
        zero_cells,
    };
    field.validate()?;
    Ok(field)
}

/// Emits the canonical JSON document for a presentation. Deterministic:
/// tables and cells are listed in ascending key order.
pub fn emit_document(field: &FieldPresentation) -> String {
    let mult = field
        .mult
        .iter()
        .map(|(&(a, b), t)| MultDocument {
            deg_a: a,
            deg_b: b,
            table: (0..t.rows)
                .map(|i| (0..t.cols).map(|j| f2_to_vec(t.product(i, j))).collect())
                .collect(),
        })
        .collect();
    let cells: Vec<CellDocument> = field
        .integral_cells
        .values()
        .map(|c| CellDocument {
            p: c.p,
            q: c.q,
            free_rank: c.group.free_rank,
            torsion: c
                .group
                .torsion
                .iter()
                .map(|d| u64::try_from(d).expect("torsion factor exceeds u64 in document"))
                .collect(),
            pr_matrix: (0..c.pr_matrix.rows())
                .map(|i| {
                    (0..c.pr_matrix.cols())
                        .map(|j| i64::try_from(c.pr_matrix.get(i, j)).expect("pr entry range"))
                        .collect()
                })
                .collect(),
            divisible: c.divisible_part,
        })
        .collect();
    let integral = if cells.is_empty() && field.zero_cells.is_empty() && !field.beilinson_soule {
        None
    } else {
        Some(IntegralDocument {
            cells,
            flags: FlagsDocument {
                beilinson_soule: field.beilinson_soule,
                zero_cells: field.zero_cells.iter().map(|&(p, q)| [p, q]).collect(),
            },
        })
    };
    let doc = FieldDocument {
        name: field.name.clone(),
        truncation: field.truncation,
        milnor: MilnorDocument {
            dims: field.dims.clone(),
            basis: field.basis_labels.clone(),
            rho: f2_to_vec(&field.rho),
            mult,
        },
        integral,
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::presets::{preset_field, standard_presets};

    #[test]
    fn roundtrip_is_identity_on_presets() {
        for kind in standard_presets() {
            let f = preset_field(kind).unwrap();
            let text = emit_document(&f);
            let reloaded = load_field_json(&text).unwrap();
            assert_eq!(f, reloaded, "round-trip changed {}", f.name);
            let again = emit_document(&reloaded);
            assert_eq!(text, again, "emission is not canonical for {}", f.name);
        }
    }

    #[test]
    fn rejects_axiom_violation() {
        // A rank-two degree-1 part with x·x ≠ ρ·x for a basis element.
        let text = r#"{
            "name": "broken",
            "truncation": 2,
            "milnor": {
                "dims": [1, 1, 1],
                "basis": [["1"], ["a"], ["{a,a}"]],
                "rho": [0],
                "mult": [
                    {"deg_a": 1, "deg_b": 1, "table": [[[1]]]}
                ]
            }
        }"#;
        let err = load_field_json(text).unwrap_err();
        assert!(err.to_string().contains("x·x"), "{err}");
    }

    #[test]
    fn rejects_truncation_below_two() {
        let text = r#"{
            "name": "tiny",
            "truncation": 1,
            "milnor": {"dims": [1, 0], "basis": [["1"], []], "rho": [], "mult": []}
        }"#;
        assert!(load_field_json(text).is_err());
    }

    #[test]
    fn quadratically_closed_document_is_valid() {
        let text = r#"{
            "name": "qbar",
            "truncation": 3,
            "milnor": {
                "dims": [1, 0, 0, 0],
                "basis": [["1"], [], [], []],
                "rho": [],
                "mult": []
            }
        }"#;
        let f = load_field_json(text).unwrap();
        assert_eq!(f.h_dim(0, 0).unwrap(), 1);
        assert_eq!(f.h_dim(1, 1).unwrap(), 0);
    }
}
