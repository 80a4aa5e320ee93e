//! Generalized intersection matrices (GIMs) of N-fold affinization and their
//! Dynkin diagrams.
//!
//! The N-fold affinization of an affine Cartan matrix replaces the single
//! affine node 0 by N copies indexed (−N+1, …, −1, 0); the new block is the
//! all-2s matrix T, and each copy attaches to the finite part exactly as node
//! 0 does. Positive off-diagonal entries (the 2s of T) are what make the
//! result a GIM rather than a generalized Cartan matrix; in diagrams they are
//! drawn as dotted double edges.

use crate::rootdata::AffineDatum;
use serde::{Deserialize, Serialize};

/// A GIM with its index set (−N+1, …, −1, 0, 1, …, n) and symmetrizer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GimMatrix {
    pub index_set: Vec<i64>,
    pub entries: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStyle {
    Solid,
    Dotted,
}

/// One diagram edge; `a < b` in index order, `arrow` is the node the arrow
/// points at (the shorter root) or `None` for symmetric pairs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DynkinEdge {
    pub a: i64,
    pub b: i64,
    pub style: EdgeStyle,
    pub mult: u32,
    pub arrow: Option<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DynkinGraph {
    pub nodes: Vec<i64>,
    pub edges: Vec<DynkinEdge>,
}

/// A single GIM axiom or symmetrizability violation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GimViolation {
    /// "C1", "C2", "C3", or "SYM"
    pub axiom: String,
    pub i: i64,
    pub j: i64,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GimReport {
    pub violations: Vec<GimViolation>,
}

impl GimReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GimError {
    #[error("matrix fails GIM axioms: {0:?}")]
    InvalidGim(Vec<GimViolation>),
    #[error("nfold must be >= 1, got {0}")]
    BadNfold(i64),
}

/// The GIM of N-fold affinization: block matrix [[T, P], [Q, A]] with
/// T the N×N all-2s block, p_{sj} = a_{0j} and q_{js} = a_{j0}.
pub fn nfold_gim(ad: &AffineDatum, nfold: usize) -> Result<GimMatrix, GimError> {
    if nfold < 1 {
        return Err(GimError::BadNfold(nfold as i64));
    }
    let n = ad.base.rank;
    let index_set: Vec<i64> = (-(nfold as i64) + 1..=n as i64).collect();
    let size = nfold + n;
    let mut entries = vec![vec![0i64; size]; size];
    for r in 0..size {
        for c in 0..size {
            let lr = index_set[r];
            let lc = index_set[c];
            entries[r][c] = match (lr <= 0, lc <= 0) {
                (true, true) => 2,
                (true, false) => ad.a(0, lc as usize),
                (false, true) => ad.a(lr as usize, 0),
                (false, false) => ad.a(lr as usize, lc as usize),
            };
        }
    }
    let symmetrizer: Vec<i64> = index_set
        .iter()
        .map(|&l| if l <= 0 { ad.d0 } else { ad.d(l as usize) })
        .collect();
    Ok(GimMatrix {
        index_set,
        entries,
        symmetrizer,
    })
}

/// Checks the GIM axioms (C1)–(C3) and symmetrizability by the stored
/// symmetrizer; an empty report means the matrix is a valid symmetrizable GIM.
pub fn check_gim_axioms(m: &GimMatrix) -> GimReport {
    let mut violations = Vec::new();
    let size = m.index_set.len();
    for r in 0..size {
        let i = m.index_set[r];
        if m.entries[r][r] != 2 {
            violations.push(GimViolation {
                axiom: "C1".into(),
                i,
                j: i,
                detail: format!("m_ii = {} != 2", m.entries[r][r]),
            });
        }
        for c in 0..size {
            if r == c {
                continue;
            }
            let j = m.index_set[c];
            let mij = m.entries[r][c];
            let mji = m.entries[c][r];
            if r < c && mij * mji < 0 {
                violations.push(GimViolation {
                    axiom: "C2".into(),
                    i,
                    j,
                    detail: format!("m_ij·m_ji = {} < 0", mij * mji),
                });
            }
            if mij == 0 && mji != 0 {
                violations.push(GimViolation {
                    axiom: "C3".into(),
                    i,
                    j,
                    detail: format!("m_ij = 0 but m_ji = {}", mji),
                });
            }
            if r < c && m.symmetrizer[r] * mij != m.symmetrizer[c] * mji {
                violations.push(GimViolation {
                    axiom: "SYM".into(),
                    i,
                    j,
                    detail: format!(
                        "d_i·m_ij = {} != d_j·m_ji = {}",
                        m.symmetrizer[r] * mij,
                        m.symmetrizer[c] * mji
                    ),
                });
            }
        }
    }
    GimReport { violations }
}

/// Diagram per the appendix conventions: dotted iff both off-diagonal entries
/// are positive, multiplicity max(|m_ij|, |m_ji|), arrow toward the shorter
/// root when the two entries differ in magnitude.
pub fn dynkin_diagram(m: &GimMatrix) -> Result<DynkinGraph, GimError> {
    let report = check_gim_axioms(m);
    if !report.is_valid() {
        return Err(GimError::InvalidGim(report.violations));
    }
    let size = m.index_set.len();
    let mut edges = Vec::new();
    for r in 0..size {
        for c in r + 1..size {
            let mij = m.entries[r][c];
            let mji = m.entries[c][r];
            if mij == 0 {
                continue;
            }
            let style = if mij > 0 && mji > 0 {
                EdgeStyle::Dotted
            } else {
                EdgeStyle::Solid
            };
            let mult = mij.abs().max(mji.abs()) as u32;
            // d_i·m_ij = d_j·m_ji, so the row holding the larger |entry|
            // belongs to the shorter root — that node gets the arrow.
            let arrow = if mij.abs() > mji.abs() {
                Some(m.index_set[r])
            } else if mji.abs() > mij.abs() {
                Some(m.index_set[c])
            } else {
                None
            };
            edges.push(DynkinEdge {
                a: m.index_set[r],
                b: m.index_set[c],
                style,
                mult,
                arrow,
            });
        }
    }
    Ok(DynkinGraph {
        nodes: m.index_set.clone(),
        edges,
    })
}

/// Deterministic Graphviz output. Dotted edges are dashed, multiplicities are
/// parallel edges, arrows are directed edges (everything else `dir=none`).
pub fn render_dot(g: &DynkinGraph) -> String {
    let mut out = String::from("digraph dynkin {\n  node [shape=circle];\n");
    for node in &g.nodes {
        out.push_str(&format!("  \"{}\";\n", node));
    }
    for e in &g.edges {
        let (from, to, dir) = match e.arrow {
            Some(t) if t == e.a => (e.b, e.a, ""),
            Some(_) => (e.a, e.b, ""),
            None => (e.a, e.b, ", dir=none"),
        };
        let style = match e.style {
            EdgeStyle::Solid => "solid",
            EdgeStyle::Dotted => "dashed",
        };
        for _ in 0..e.mult {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [style={}{}];\n",
                from, to, style, dir
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{affinize, cartan, Family};

    fn ad(f: Family, n: usize) -> AffineDatum {
        affinize(&cartan(f, n).unwrap())
    }

    #[test]
    fn nfold_a2_example() {
        let m = nfold_gim(&ad(Family::A, 2), 2).unwrap();
        assert_eq!(m.index_set, vec![-1, 0, 1, 2]);
        assert_eq!(
            m.entries,
            vec![
                vec![2, 2, -1, -1],
                vec![2, 2, -1, -1],
                vec![-1, -1, 2, -1],
                vec![-1, -1, -1, 2],
            ]
        );
        assert_eq!(m.symmetrizer, vec![1, 1, 1, 1]);
    }

    #[test]
    fn nfold_one_is_affine_matrix() {
        let ad = ad(Family::D, 4);
        let m = nfold_gim(&ad, 1).unwrap();
        assert_eq!(m.entries, ad.affine_matrix);
    }

    #[test]
    fn nfold_g2_negative_attachments() {
        let m = nfold_gim(&ad(Family::G, 2), 3).unwrap();
        assert_eq!(m.index_set, vec![-2, -1, 0, 1, 2]);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(m.entries[r][c], 2);
            }
            assert_eq!(m.entries[r][3], -1); // p = a_01
            assert_eq!(m.entries[3][r], -1); // q = a_10
            assert_eq!(m.entries[r][4], 0);
        }
        assert_eq!(m.symmetrizer, vec![3, 3, 3, 3, 1]);
    }

    #[test]
    fn axioms_pass_for_generated() {
        for (f, n) in crate::rootdata::atlas_families() {
            for nfold in 1..=3 {
                let m = nfold_gim(&ad(f, n), nfold).unwrap();
                let report = check_gim_axioms(&m);
                assert!(report.is_valid(), "{f}{n} N={nfold}: {:?}", report.violations);
            }
        }
    }

    #[test]
    fn axioms_catch_violations() {
        let mut m = nfold_gim(&ad(Family::A, 2), 1).unwrap();
        m.entries[0][1] = 1;
        m.entries[1][0] = -1;
        let report = check_gim_axioms(&m);
        assert!(report.violations.iter().any(|v| v.axiom == "C2"));

        let mut m = nfold_gim(&ad(Family::A, 2), 1).unwrap();
        m.entries[0][1] = 0;
        m.entries[1][0] = 3;
        let report = check_gim_axioms(&m);
        assert!(report.violations.iter().any(|v| v.axiom == "C3"));

        let mut m = nfold_gim(&ad(Family::A, 2), 1).unwrap();
        m.entries[0][0] = 1;
        let report = check_gim_axioms(&m);
        assert!(report.violations.iter().any(|v| v.axiom == "C1"));
    }

    #[test]
    fn diagram_a2_n2() {
        let g = dynkin_diagram(&nfold_gim(&ad(Family::A, 2), 2).unwrap()).unwrap();
        assert_eq!(g.nodes, vec![-1, 0, 1, 2]);
        let dotted: Vec<_> = g
            .edges
            .iter()
            .filter(|e| e.style == EdgeStyle::Dotted)
            .collect();
        assert_eq!(dotted.len(), 1);
        assert_eq!((dotted[0].a, dotted[0].b, dotted[0].mult), (-1, 0, 2));
        assert_eq!(
            g.edges.iter().filter(|e| e.style == EdgeStyle::Solid).count(),
            5
        );
    }

    #[test]
    fn dot_output_is_deterministic() {
        let g = dynkin_diagram(&nfold_gim(&ad(Family::A, 2), 2).unwrap()).unwrap();
        let d1 = render_dot(&g);
        let d2 = render_dot(&g);
        assert_eq!(d1, d2);
        assert!(d1.contains("style=dashed"));
        assert!(d1.starts_with("digraph dynkin {"));
    }

    #[test]
    fn single_node_dot() {
        let g = dynkin_diagram(&nfold_gim(&ad(Family::A, 1), 1).unwrap()).unwrap();
        let m1 = nfold_gim(&ad(Family::A, 1), 1).unwrap();
        assert_eq!(m1.index_set, vec![0, 1]);
        // A1 affine: single edge of multiplicity 2, no arrow
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].mult, 2);
        assert_eq!(g.edges[0].arrow, None);
    }
}
