//! Second-order curve machinery: the P_(i,j) localization regions with their
//! conic classification, outer localizations, elementary decompositions for
//! normal generating matrices, and inertia-based curve counts.
//!
//! Index pairs follow the usual principal-minor convention and are 1-based.

use crate::analysis::{json_num, Orientation};
use crate::config::ToleranceConfig;
use crate::kernel::{self, sym_eigen, Inertia, KernelError, SymEigen};
use crate::matrix::{DenseMatrix, Lu};
use crate::region::{ComplexPoint, LmiRegion};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyError {
    /// An index pair or index set leaves the matrix range.
    IndexOutOfRange,
    /// M is not normal within tolerance.
    NotNormal,
    /// L and M do not commute within tolerance.
    NotCommuting,
    /// The pair admits no simultaneous congruence reduction.
    NotReducible,
    Kernel(KernelError),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::IndexOutOfRange => write!(f, "index out of range"),
            ClassifyError::NotNormal => write!(f, "M is not normal"),
            ClassifyError::NotCommuting => write!(f, "L and M do not commute"),
            ClassifyError::NotReducible => {
                write!(f, "pair is not simultaneously reducible by congruence")
            }
            ClassifyError::Kernel(e) => write!(f, "kernel failure: {e}"),
        }
    }
}

impl std::error::Error for ClassifyError {}

impl From<KernelError> for ClassifyError {
    fn from(e: KernelError) -> Self {
        ClassifyError::Kernel(e)
    }
}

/// Conic type by the sign of δ = a11·a22 and the 3×3 determinant Δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Elliptic,
    Hyperbolic,
    /// δ < 0 with Δ ≈ 0: a pair of intersecting lines.
    DegeneratePair,
    Parabolic,
    /// All coefficients vanish.
    Degenerate,
}

impl ConicKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConicKind::Elliptic => "elliptic",
            ConicKind::Hyperbolic => "hyperbolic",
            ConicKind::DegeneratePair => "degenerate_pair",
            ConicKind::Parabolic => "parabolic",
            ConicKind::Degenerate => "degenerate",
        }
    }
}

/// One second-order localization region
/// P_(i,j) = {x + iy : a11·x² + a22·y² + 2·a13·x + a33 > 0}.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRegion {
    /// 1-based index pair, i < j.
    pub i: usize,
    pub j: usize,
    pub a11: f64,
    pub a22: f64,
    pub a13: f64,
    pub a33: f64,
    pub kind: ConicKind,
}

impl CurveRegion {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.a11 * z.x * z.x + self.a22 * z.y * z.y + 2.0 * self.a13 * z.x + self.a33 > 0.0
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"i\":{},\"j\":{},\"a11\":{},\"a22\":{},\"a13\":{},\"a33\":{},\"kind\":\"{}\"}}",
            self.i,
            self.j,
            json_num(self.a11),
            json_num(self.a22),
            json_num(self.a13),
            json_num(self.a33),
            self.kind.as_str()
        )
    }
}

/// Mixed minor (L∧M)(i, j) = |m_ii l_ij; m_ji l_jj| + |l_ii m_ij; l_ji m_jj|
/// on a 1-based index pair.
pub fn mixed_minor(
    l: &DenseMatrix,
    m: &DenseMatrix,
    i: usize,
    j: usize,
) -> Result<f64, ClassifyError> {
    let n = l.dim();
    if m.dim() != n || i == 0 || j == 0 || i >= j || j > n {
        return Err(ClassifyError::IndexOutOfRange);
    }
    let (i, j) = (i - 1, j - 1);
    let d1 = m[(i, i)] * l[(j, j)] - l[(i, j)] * m[(j, i)];
    let d2 = l[(i, i)] * m[(j, j)] - m[(i, j)] * l[(j, i)];
    Ok(d1 + d2)
}

/// Classify a conic a11·x² + a22·y² + 2·a13·x + a33 by its invariants, with
/// thresholds scaled to the coefficient magnitudes.
pub fn classify_conic(a11: f64, a22: f64, a13: f64, a33: f64, cfg: &ToleranceConfig) -> ConicKind {
    let s = a11.abs().max(a22.abs()).max(a13.abs()).max(a33.abs());
    if s <= f64::MIN_POSITIVE {
        return ConicKind::Degenerate;
    }
    let delta = a11 * a22;
    let s2 = a11.abs().max(a22.abs());
    if delta.abs() <= cfg.def_margin * s2 * s2 {
        return ConicKind::Parabolic;
    }
    if delta > 0.0 {
        return ConicKind::Elliptic;
    }
    let big = a22 * (a11 * a33 - a13 * a13);
    if big.abs() <= cfg.def_margin * s * s * s {
        ConicKind::DegeneratePair
    } else {
        ConicKind::Hyperbolic
    }
}

/// The localization region P_(i,j) of a 1-based index pair, with
/// a11 = (M+Mᵀ)(i,j), a22 = −(M−Mᵀ)(i,j), a33 = L(i,j), a13 = (L∧M)(i,j).
pub fn pij_region(
    r: &LmiRegion,
    i: usize,
    j: usize,
    cfg: &ToleranceConfig,
) -> Result<CurveRegion, ClassifyError> {
    let n = r.order();
    if i == 0 || j == 0 || i >= j || j > n {
        return Err(ClassifyError::IndexOutOfRange);
    }
    let l = r.l();
    let m = r.m();
    let (p, q) = (i - 1, j - 1);
    let minor2 = |mat: &DenseMatrix| -> f64 {
        mat[(p, p)] * mat[(q, q)] - mat[(p, q)] * mat[(q, p)]
    };
    let sym2 = r.sym_m().scaled(2.0);
    let skew2 = r.skew_m().scaled(2.0);
    let a11 = minor2(&sym2);
    let a22 = -minor2(&skew2);
    let a33 = minor2(l);
    let a13 = mixed_minor(l, m, i, j)?;
    let kind = classify_conic(a11, a22, a13, a33, cfg);
    Ok(CurveRegion { i, j, a11, a22, a13, a33, kind })
}

/// The order-n diagonal localization 𝔇₁ ⊇ 𝔇 from the principal diagonals of
/// L and M.
pub fn diagonal_localization(r: &LmiRegion) -> LmiRegion {
    let n = r.order();
    let l1 = DenseMatrix::diag(&(0..n).map(|i| r.l()[(i, i)]).collect::<Vec<_>>());
    let m1 = DenseMatrix::diag(&(0..n).map(|i| r.m()[(i, i)]).collect::<Vec<_>>());
    LmiRegion::new(l1, m1, &ToleranceConfig::default()).expect("diagonal pair is always valid")
}

/// The principal-submatrix localization 𝔇_α ⊇ 𝔇 on a strictly increasing
/// 1-based index set.
pub fn principal_localization(r: &LmiRegion, alpha: &[usize]) -> Result<LmiRegion, ClassifyError> {
    let n = r.order();
    if alpha.is_empty()
        || alpha.iter().any(|&i| i == 0 || i > n)
        || alpha.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(ClassifyError::IndexOutOfRange);
    }
    let idx: Vec<usize> = alpha.iter().map(|&i| i - 1).collect();
    let l = r.l().submatrix(&idx);
    let m = r.m().submatrix(&idx);
    Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).expect("principal pair is valid"))
}

/// One factor of an elementary decomposition.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementaryPiece {
    ShiftedHalfplane { boundary: f64, orientation: Orientation },
    ShiftedCone { vertex: f64, half_angle: f64, orientation: Orientation },
    HorizontalStripe { half_width: f64 },
    /// One side of a conic of hyperbolic type, as the raw inequality
    /// a11·x² + a22·y² + 2·a13·x + a33 > 0.
    Hyperbola { a11: f64, a22: f64, a13: f64, a33: f64 },
    WholePlane,
    Empty,
}

impl ElementaryPiece {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        match *self {
            ElementaryPiece::ShiftedHalfplane { boundary, orientation } => match orientation {
                Orientation::TowardMinusInf => z.x < boundary,
                Orientation::TowardPlusInf => z.x > boundary,
            },
            ElementaryPiece::ShiftedCone { vertex, half_angle, orientation } => {
                let depth = match orientation {
                    Orientation::TowardMinusInf => vertex - z.x,
                    Orientation::TowardPlusInf => z.x - vertex,
                };
                depth > 0.0 && z.y.abs() < depth * half_angle.tan()
            }
            ElementaryPiece::HorizontalStripe { half_width } => z.y.abs() < half_width,
            ElementaryPiece::Hyperbola { a11, a22, a13, a33 } => {
                a11 * z.x * z.x + a22 * z.y * z.y + 2.0 * a13 * z.x + a33 > 0.0
            }
            ElementaryPiece::WholePlane => true,
            ElementaryPiece::Empty => false,
        }
    }

    fn close_to(&self, other: &ElementaryPiece, tol: f64) -> bool {
        let near = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
        match (self, other) {
            (
                ElementaryPiece::ShiftedHalfplane { boundary: b1, orientation: o1 },
                ElementaryPiece::ShiftedHalfplane { boundary: b2, orientation: o2 },
            ) => o1 == o2 && near(*b1, *b2),
            (
                ElementaryPiece::ShiftedCone { vertex: v1, half_angle: h1, orientation: o1 },
                ElementaryPiece::ShiftedCone { vertex: v2, half_angle: h2, orientation: o2 },
            ) => o1 == o2 && near(*v1, *v2) && near(*h1, *h2),
            (
                ElementaryPiece::HorizontalStripe { half_width: w1 },
                ElementaryPiece::HorizontalStripe { half_width: w2 },
            ) => near(*w1, *w2),
            (
                ElementaryPiece::Hyperbola { a11: a1, a22: b1, a13: c1, a33: d1 },
                ElementaryPiece::Hyperbola { a11: a2, a22: b2, a13: c2, a33: d2 },
            ) => near(*a1, *a2) && near(*b1, *b2) && near(*c1, *c2) && near(*d1, *d2),
            (ElementaryPiece::WholePlane, ElementaryPiece::WholePlane) => true,
            (ElementaryPiece::Empty, ElementaryPiece::Empty) => true,
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        match *self {
            ElementaryPiece::ShiftedHalfplane { boundary, orientation } => format!(
                "{{\"kind\":\"shifted_halfplane\",\"boundary\":{},\"orientation\":\"{}\"}}",
                json_num(boundary),
                orientation.as_str()
            ),
            ElementaryPiece::ShiftedCone { vertex, half_angle, orientation } => format!(
                "{{\"kind\":\"shifted_cone\",\"vertex\":{},\"half_angle\":{},\"orientation\":\"{}\"}}",
                json_num(vertex),
                json_num(half_angle),
                orientation.as_str()
            ),
            ElementaryPiece::HorizontalStripe { half_width } => format!(
                "{{\"kind\":\"horizontal_stripe\",\"half_width\":{}}}",
                json_num(half_width)
            ),
            ElementaryPiece::Hyperbola { a11, a22, a13, a33 } => format!(
                "{{\"kind\":\"hyperbola\",\"a11\":{},\"a22\":{},\"a13\":{},\"a33\":{}}}",
                json_num(a11),
                json_num(a22),
                json_num(a13),
                json_num(a33)
            ),
            ElementaryPiece::WholePlane => "{\"kind\":\"whole_plane\"}".to_string(),
            ElementaryPiece::Empty => "{\"kind\":\"empty\"}".to_string(),
        }
    }
}

/// A decomposition of a region into elementary factors whose intersection
/// reproduces it. Whole-plane factors are dropped from the list and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub pieces: Vec<ElementaryPiece>,
    pub whole_planes_dropped: usize,
}

impl Decomposition {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.pieces.iter().all(|p| p.contains(z))
    }

    pub fn to_json(&self) -> String {
        let items: Vec<String> = self.pieces.iter().map(|p| p.to_json()).collect();
        format!(
            "{{\"pieces\":[{}],\"whole_planes_dropped\":{}}}",
            items.join(","),
            self.whole_planes_dropped
        )
    }
}

fn normality_defect(m: &DenseMatrix) -> f64 {
    let mt = m.transpose();
    (&(m * &mt) - &(&mt * m)).frobenius()
}

fn commutation_defect(l: &DenseMatrix, m: &DenseMatrix) -> f64 {
    (&(l * m) - &(m * l)).frobenius()
}

/// Quasi-diagonalized joint data: the orthogonal (or congruence) basis, the
/// diagonals of the transformed Sym(M) and L, and the transformed skew part.
struct JointForm {
    lam_sym: Vec<f64>,
    lam_l: Vec<f64>,
    skew: DenseMatrix,
}

/// Cluster indices 0..n by near-equality of `values` (already sorted runs are
/// not assumed); returns cluster id per index.
fn cluster_values(values: &[f64], gap: f64) -> Vec<usize> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ids = vec![0usize; n];
    let mut current = 0;
    for w in 0..n {
        if w > 0 && (values[order[w]] - values[order[w - 1]]).abs() > gap {
            current += 1;
        }
        ids[order[w]] = current;
    }
    ids
}

/// Orthonormal transform of one skew block into canonical 2×2 pairs, built by
/// pairing each unit vector v with K v/ν inside the eigenspaces of −K².
fn quasi_diagonalize_skew(
    k: &DenseMatrix,
    cfg: &ToleranceConfig,
) -> Result<DenseMatrix, ClassifyError> {
    let n = k.dim();
    let g = &k.transpose() * k; // = −K² for skew K
    let eig = sym_eigen(&g, cfg)?;
    let t = cfg.zero_threshold(k.frobenius().max(1.0));
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut zero_cols: Vec<Vec<f64>> = Vec::new();

    let mut idx = 0;
    while idx < n {
        let nu2 = eig.eigenvalues[idx];
        // Gather the eigenvalue group.
        let mut group = vec![idx];
        while group.len() + idx < n
            && (eig.eigenvalues[idx + group.len()] - nu2).abs()
                <= 1e-7 * (1.0 + nu2.abs())
        {
            group.push(idx + group.len());
        }
        idx += group.len();
        let nu = nu2.max(0.0).sqrt();
        let basis: Vec<Vec<f64>> = group
            .iter()
            .map(|&c| (0..n).map(|r| eig.eigenvectors[(r, c)]).collect())
            .collect();
        if nu <= t {
            zero_cols.extend(basis);
            continue;
        }
        // Pair v with K v / ν, consuming the eigenspace.
        let mut remaining = basis;
        while !remaining.is_empty() {
            let mut v = remaining.remove(0);
            let norm = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let nv = norm(&v);
            if nv <= 1e-12 {
                continue;
            }
            for x in &mut v {
                *x /= nv;
            }
            let mut w = k.mul_vec(&v);
            for x in &mut w {
                *x /= nu;
            }
            // Deflate both directions out of the remaining basis.
            for rem in &mut remaining {
                let dv: f64 = rem.iter().zip(&v).map(|(a, b)| a * b).sum();
                let dw: f64 = rem.iter().zip(&w).map(|(a, b)| a * b).sum();
                for i in 0..n {
                    rem[i] -= dv * v[i] + dw * w[i];
                }
            }
            remaining.retain(|r| norm(r) > 1e-8);
            cols.push(w);
            cols.push(v);
        }
    }
    cols.extend(zero_cols);
    if cols.len() != n {
        return Err(ClassifyError::NotReducible);
    }
    Ok(DenseMatrix::from_fn(n, |i, j| cols[j][i]))
}

/// Simultaneous quasi-diagonalization of the commuting triple
/// (Sym(M), L, Skew(M)) by one orthogonal basis.
fn joint_quasi_diagonalize(
    r: &LmiRegion,
    cfg: &ToleranceConfig,
) -> Result<JointForm, ClassifyError> {
    let n = r.order();
    let eig_s = sym_eigen(r.sym_m(), cfg)?;
    let mut q = eig_s.eigenvectors.clone();
    let lam_scale = eig_s.eigenvalues.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
    let sym_ids = cluster_values(&eig_s.eigenvalues, 1e-7 * lam_scale);

    // Refine each Sym(M)-cluster by the eigenbasis of the restricted L.
    let mut l1 = &(&q.transpose() * r.l()) * &q;
    let cluster_count = sym_ids.iter().max().unwrap() + 1;
    for c in 0..cluster_count {
        let members: Vec<usize> = (0..n).filter(|&i| sym_ids[i] == c).collect();
        if members.len() < 2 {
            continue;
        }
        let block = l1.submatrix(&members);
        let sub = sym_eigen(&block, cfg)?;
        let mut rot = DenseMatrix::identity(n);
        for (a, &ia) in members.iter().enumerate() {
            for (b, &ib) in members.iter().enumerate() {
                rot[(ia, ib)] = sub.eigenvectors[(a, b)];
            }
        }
        q = &q * &rot;
        l1 = &(&q.transpose() * r.l()) * &q;
    }

    // Joint clusters of (Sym eigenvalue, L eigenvalue) and the skew blocks.
    let lam_l: Vec<f64> = (0..n).map(|i| l1[(i, i)]).collect();
    let l_scale = lam_l.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
    let l_ids = cluster_values(&lam_l, 1e-7 * l_scale);
    let mut k1 = &(&q.transpose() * r.skew_m()) * &q;

    let mut seen: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let key = (sym_ids[i], l_ids[i]);
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let members: Vec<usize> =
            (0..n).filter(|&j| (sym_ids[j], l_ids[j]) == key).collect();
        if members.len() < 2 {
            continue;
        }
        let block = k1.submatrix(&members);
        if block.frobenius() <= cfg.zero_threshold(r.skew_m().frobenius().max(1.0)) {
            continue;
        }
        let v = quasi_diagonalize_skew(&block, cfg)?;
        let mut rot = DenseMatrix::identity(n);
        for (a, &ia) in members.iter().enumerate() {
            for (b, &ib) in members.iter().enumerate() {
                rot[(ia, ib)] = v[(a, b)];
            }
        }
        q = &q * &rot;
        k1 = &(&q.transpose() * r.skew_m()) * &q;
    }

    let sym_final = &(&q.transpose() * r.sym_m()) * &q;
    let l_final = &(&q.transpose() * r.l()) * &q;
    let lam_sym: Vec<f64> = (0..n).map(|i| sym_final[(i, i)]).collect();
    let lam_l: Vec<f64> = (0..n).map(|i| l_final[(i, i)]).collect();

    // All three transforms must now be (quasi-)diagonal.
    let offdiag = |m: &DenseMatrix| {
        let mut s = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)] * m[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    let tol_s = 1e-7 * (1.0 + r.sym_m().frobenius());
    let tol_l = 1e-7 * (1.0 + r.l().frobenius());
    if offdiag(&sym_final) > tol_s || offdiag(&l_final) > tol_l {
        return Err(ClassifyError::NotCommuting);
    }
    Ok(JointForm { lam_sym, lam_l, skew: k1 })
}

/// Read matched skew pairs out of a transformed skew matrix; every
/// significant off-diagonal entry must belong to a perfect partial matching.
fn skew_matching(
    k: &DenseMatrix,
    scale: f64,
) -> Result<Vec<(usize, usize, f64)>, ClassifyError> {
    let n = k.dim();
    let tol = 1e-7 * (1.0 + scale);
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if k[(i, j)].abs() > tol {
                if partner[i].is_some() || partner[j].is_some() {
                    return Err(ClassifyError::NotReducible);
                }
                partner[i] = Some(j);
                partner[j] = Some(i);
                pairs.push((i, j, k[(i, j)].abs()));
            }
        }
    }
    Ok(pairs)
}

fn push_merged(pieces: &mut Vec<ElementaryPiece>, piece: ElementaryPiece, tol: f64) {
    if !pieces.iter().any(|p| p.close_to(&piece, tol)) {
        pieces.push(piece);
    }
}

fn pieces_from_quasi_diagonal(
    lam_sym: &[f64],
    lam_l: &[f64],
    pairs: &[(usize, usize, f64)],
    zero_t: f64,
    allow_unequal_l: bool,
    cfg: &ToleranceConfig,
) -> Result<Decomposition, ClassifyError> {
    let n = lam_sym.len();
    let mut in_pair = vec![false; n];
    let mut pieces: Vec<ElementaryPiece> = Vec::new();
    let mut whole_planes = 0usize;
    let tol = cfg.geom_tol;

    for &(i, j, nu) in pairs {
        in_pair[i] = true;
        in_pair[j] = true;
        let mu = 0.5 * (lam_sym[i] + lam_sym[j]);
        if (lam_sym[i] - lam_sym[j]).abs() > 1e-7 * (1.0 + mu.abs()) {
            return Err(ClassifyError::NotReducible);
        }
        let (li, lj) = (lam_l[i], lam_l[j]);
        let l_gap = (li - lj).abs() > 1e-9 * (1.0 + li.abs().max(lj.abs()));
        if mu.abs() <= zero_t {
            // Pure-imaginary pair: a horizontal stripe, or nothing feasible.
            if l_gap {
                return Err(ClassifyError::NotReducible);
            }
            let lbar = 0.5 * (li + lj);
            if lbar < 0.0 {
                push_merged(
                    &mut pieces,
                    ElementaryPiece::HorizontalStripe { half_width: -lbar / (2.0 * nu) },
                    tol,
                );
            } else {
                return Ok(Decomposition {
                    pieces: vec![ElementaryPiece::Empty],
                    whole_planes_dropped: whole_planes,
                });
            }
        } else if l_gap {
            if !allow_unequal_l {
                return Err(ClassifyError::NotReducible);
            }
            // Unequal diagonal of L on one block: hyperbolic-type factor plus
            // the two first-order halfplanes.
            let orientation = if mu > 0.0 {
                Orientation::TowardMinusInf
            } else {
                Orientation::TowardPlusInf
            };
            push_merged(
                &mut pieces,
                ElementaryPiece::Hyperbola {
                    a11: 4.0 * mu * mu,
                    a22: -4.0 * nu * nu,
                    a13: mu * (li + lj),
                    a33: li * lj,
                },
                tol,
            );
            push_merged(
                &mut pieces,
                ElementaryPiece::ShiftedHalfplane { boundary: -li / (2.0 * mu), orientation },
                tol,
            );
            push_merged(
                &mut pieces,
                ElementaryPiece::ShiftedHalfplane { boundary: -lj / (2.0 * mu), orientation },
                tol,
            );
        } else {
            let lbar = 0.5 * (li + lj);
            let orientation = if mu > 0.0 {
                Orientation::TowardMinusInf
            } else {
                Orientation::TowardPlusInf
            };
            push_merged(
                &mut pieces,
                ElementaryPiece::ShiftedCone {
                    vertex: -lbar / (2.0 * mu),
                    half_angle: (mu.abs() / nu).atan(),
                    orientation,
                },
                tol,
            );
        }
    }

    for i in 0..n {
        if in_pair[i] {
            continue;
        }
        let mu = lam_sym[i];
        let li = lam_l[i];
        if mu.abs() <= zero_t {
            if li < 0.0 {
                whole_planes += 1;
            } else {
                return Ok(Decomposition {
                    pieces: vec![ElementaryPiece::Empty],
                    whole_planes_dropped: whole_planes,
                });
            }
        } else {
            let orientation = if mu > 0.0 {
                Orientation::TowardMinusInf
            } else {
                Orientation::TowardPlusInf
            };
            push_merged(
                &mut pieces,
                ElementaryPiece::ShiftedHalfplane { boundary: -li / (2.0 * mu), orientation },
                tol,
            );
        }
    }
    Ok(Decomposition { pieces, whole_planes_dropped: whole_planes })
}

/// Decompose a region with normal M commuting with L into halfplanes, cones
/// and horizontal stripes whose intersection is the region.
pub fn elementary_decomposition(
    r: &LmiRegion,
    cfg: &ToleranceConfig,
) -> Result<Decomposition, ClassifyError> {
    let m = r.m();
    let m_scale = m.frobenius();
    if normality_defect(m) > 1e-9 * (1.0 + m_scale * m_scale) {
        return Err(ClassifyError::NotNormal);
    }
    if commutation_defect(r.l(), m) > 1e-9 * (1.0 + r.l().frobenius() * m_scale) {
        return Err(ClassifyError::NotCommuting);
    }
    let form = joint_quasi_diagonalize(r, cfg)?;
    let pairs = skew_matching(&form.skew, r.skew_m().frobenius())?;
    let zero_t = cfg.zero_threshold(r.sym_m().frobenius());
    pieces_from_quasi_diagonal(&form.lam_sym, &form.lam_l, &pairs, zero_t, false, cfg)
}

/// Nullspace basis of a matrix by Gauss-Jordan elimination with row pivoting.
fn nullspace(a: &DenseMatrix, tol: f64) -> Vec<Vec<f64>> {
    let n = a.dim();
    let mut w = a.rows();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut is_pivot_col = vec![false; n];
    let mut row = 0usize;
    for col in 0..n {
        // Find the largest entry in this column at or below `row`.
        let mut best = tol;
        let mut pick = None;
        for rr in row..n {
            if w[rr][col].abs() > best {
                best = w[rr][col].abs();
                pick = Some(rr);
            }
        }
        let Some(p) = pick else { continue };
        w.swap(row, p);
        let d = w[row][col];
        for c in 0..n {
            w[row][c] /= d;
        }
        for rr in 0..n {
            if rr != row && w[rr][col] != 0.0 {
                let f = w[rr][col];
                for c in 0..n {
                    let sub = f * w[row][c];
                    w[rr][c] -= sub;
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        is_pivot_col[col] = true;
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot_col[free] {
            continue;
        }
        let mut v = vec![0.0; n];
        v[free] = 1.0;
        for rr in 0..n {
            if let Some(pc) = pivot_col_of_row[rr] {
                v[pc] = -w[rr][free];
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= norm;
        }
        basis.push(v);
    }
    basis
}

/// Decompose a region with normal M where (Sym(M), L) is simultaneously
/// diagonalizable by congruence; unequal L values on a skew block contribute
/// hyperbolic factors. Falls back to the orthogonal route when L and M
/// commute.
pub fn decomposition_simdiag(
    r: &LmiRegion,
    cfg: &ToleranceConfig,
) -> Result<Decomposition, ClassifyError> {
    let m = r.m();
    let m_scale = m.frobenius();
    if normality_defect(m) > 1e-9 * (1.0 + m_scale * m_scale) {
        return Err(ClassifyError::NotNormal);
    }
    if commutation_defect(r.l(), m) <= 1e-9 * (1.0 + r.l().frobenius() * m_scale) {
        return elementary_decomposition(r, cfg);
    }

    let s = r.sym_m();
    let eig_s = sym_eigen(s, cfg)?;
    let zero_t = cfg.zero_threshold(s.frobenius());
    if eig_s.eigenvalues.iter().any(|l| l.abs() <= zero_t) {
        return Err(ClassifyError::NotReducible);
    }
    let lu = Lu::factor(s).map_err(|_| ClassifyError::NotReducible)?;
    let c = lu.solve_matrix(r.l());
    let scale = 1.0 + c.frobenius();
    let eigs = kernel::general_eigenvalues(&c)?;
    if eigs.iter().any(|e| e.im.abs() > 1e-7 * scale) {
        return Err(ClassifyError::NotReducible);
    }

    // Congruence basis: per eigenvalue cluster of C, an A-orthonormalized
    // basis of the eigenspace (A = Sym(M)).
    let n = r.order();
    let mut res: Vec<f64> = eigs.iter().map(|e| e.re).collect();
    res.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut basis_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let gap = 1e-7 * scale;
    let mut i = 0;
    while i < res.len() {
        let mut j = i + 1;
        while j < res.len() && (res[j] - res[j - 1]).abs() <= gap {
            j += 1;
        }
        let mult = j - i;
        let lambda = res[i..j].iter().sum::<f64>() / mult as f64;
        let mut shifted = c.clone();
        for d in 0..n {
            shifted[(d, d)] -= lambda;
        }
        let space = nullspace(&shifted, 1e-8 * scale);
        if space.len() < mult {
            return Err(ClassifyError::NotReducible);
        }
        // Gram matrix of A restricted to the eigenspace; |Λ|^{-1/2}-normalize.
        let mdim = space.len();
        let mut gram = DenseMatrix::zeros(mdim);
        for a in 0..mdim {
            let sa = s.mul_vec(&space[a]);
            for b in 0..mdim {
                gram[(a, b)] = space[b].iter().zip(&sa).map(|(x, y)| x * y).sum();
            }
        }
        let gram = gram.sym_part();
        let ge = sym_eigen(&gram, cfg)?;
        if ge.eigenvalues.iter().any(|l| l.abs() <= 1e-10 * (1.0 + gram.frobenius())) {
            return Err(ClassifyError::NotReducible);
        }
        for col in 0..mdim {
            let mut v = vec![0.0; n];
            let root = ge.eigenvalues[col].abs().sqrt();
            for (a, vec_a) in space.iter().enumerate() {
                let coeff = ge.eigenvectors[(a, col)] / root;
                for d in 0..n {
                    v[d] += coeff * vec_a[d];
                }
            }
            basis_cols.push(v);
        }
        i = j;
    }
    if basis_cols.len() != n {
        return Err(ClassifyError::NotReducible);
    }
    let rmat = DenseMatrix::from_fn(n, |a, b| basis_cols[b][a]);

    let d_s = &(&rmat.transpose() * s) * &rmat;
    let d_l = &(&rmat.transpose() * r.l()) * &rmat;
    let mut k2 = &(&rmat.transpose() * r.skew_m()) * &rmat;
    let offdiag_tol = 1e-6;
    for a in 0..n {
        for b in 0..n {
            if a != b && (d_s[(a, b)].abs() > offdiag_tol || d_l[(a, b)].abs() > offdiag_tol * (1.0 + r.l().frobenius())) {
                return Err(ClassifyError::NotReducible);
            }
        }
    }
    let lam_sym: Vec<f64> = (0..n).map(|d| d_s[(d, d)]).collect();
    let lam_l: Vec<f64> = (0..n).map(|d| d_l[(d, d)]).collect();

    // Within joint (d_s, d_l) subclusters the skew block may be rotated to
    // canonical pairs without disturbing the diagonals.
    let s_ids = cluster_values(&lam_sym, 1e-7);
    let l_ids = cluster_values(&lam_l, 1e-7 * (1.0 + r.l().frobenius()));
    let mut rfull = rmat.clone();
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for d in 0..n {
        let key = (s_ids[d], l_ids[d]);
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let members: Vec<usize> = (0..n).filter(|&e| (s_ids[e], l_ids[e]) == key).collect();
        if members.len() < 2 {
            continue;
        }
        let block = k2.submatrix(&members);
        if block.frobenius() <= cfg.zero_threshold(k2.frobenius().max(1.0)) {
            continue;
        }
        let v = quasi_diagonalize_skew(&block, cfg)?;
        let mut rot = DenseMatrix::identity(n);
        for (a, &ia) in members.iter().enumerate() {
            for (b, &ib) in members.iter().enumerate() {
                rot[(ia, ib)] = v[(a, b)];
            }
        }
        rfull = &rfull * &rot;
        k2 = &(&rfull.transpose() * r.skew_m()) * &rfull;
    }

    let pairs = skew_matching(&k2, k2.frobenius())?;
    pieces_from_quasi_diagonal(&lam_sym, &lam_l, &pairs, 1e-9, true, cfg)
}

/// Census of the P_(i,j) conic kinds in the Sym(M) eigenbasis, with the
/// inertia-derived bounds: elliptic ≤ i₊·i₋ and
/// hyperbolic-or-pair ≤ C(i₊,2) + C(i₋,2).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveCensus {
    pub elliptic: usize,
    pub hyperbolic_or_pair: usize,
    pub parabolic: usize,
    pub degenerate: usize,
    pub inertia: Inertia,
    pub elliptic_bound: usize,
    pub hyperbolic_bound: usize,
}

impl CurveCensus {
    pub fn bounds_hold(&self) -> bool {
        self.elliptic <= self.elliptic_bound && self.hyperbolic_or_pair <= self.hyperbolic_bound
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"elliptic\":{},\"hyperbolic_or_pair\":{},\"parabolic\":{},\"degenerate\":{},\"inertia\":{{\"pos\":{},\"neg\":{},\"zero\":{}}},\"elliptic_bound\":{},\"hyperbolic_bound\":{}}}",
            self.elliptic,
            self.hyperbolic_or_pair,
            self.parabolic,
            self.degenerate,
            self.inertia.n_pos,
            self.inertia.n_neg,
            self.inertia.n_zero,
            self.elliptic_bound,
            self.hyperbolic_bound
        )
    }
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Classify every pair region of the Sym(M)-eigenbasis representation and
/// count the conic kinds against their inertia bounds.
pub fn curve_census(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<CurveCensus, ClassifyError> {
    let n = r.order();
    if n < 2 {
        return Err(ClassifyError::IndexOutOfRange);
    }
    let eig: SymEigen = sym_eigen(r.sym_m(), cfg)?;
    let q = eig.eigenvectors.transpose();
    let transformed = r
        .congruent(&q, cfg)
        .expect("orthogonal congruence preserves validity");
    let inertia = kernel::inertia(r.sym_m(), cfg)?;

    let mut census = CurveCensus {
        elliptic: 0,
        hyperbolic_or_pair: 0,
        parabolic: 0,
        degenerate: 0,
        inertia,
        elliptic_bound: inertia.n_pos * inertia.n_neg,
        hyperbolic_bound: choose2(inertia.n_pos) + choose2(inertia.n_neg),
    };
    for i in 1..=n {
        for j in (i + 1)..=n {
            let curve = pij_region(&transformed, i, j, cfg)?;
            match curve.kind {
                ConicKind::Elliptic => census.elliptic += 1,
                ConicKind::Hyperbolic | ConicKind::DegeneratePair => {
                    census.hyperbolic_or_pair += 1
                }
                ConicKind::Parabolic => census.parabolic += 1,
                ConicKind::Degenerate => census.degenerate += 1,
            }
        }
    }
    debug_assert!(census.bounds_hold());
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::real_interval;
    use crate::region::builders::*;
    use crate::testutil::intro_region;
    use std::f64::consts::FRAC_PI_4;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn grid_agrees(
        region: &LmiRegion,
        dec: &Decomposition,
        span: f64,
        cells: usize,
        cfg: &ToleranceConfig,
    ) {
        let band = 1e-7;
        for i in 0..cells {
            for j in 0..cells {
                let z = ComplexPoint::new(
                    -span + 2.0 * span * i as f64 / (cells - 1) as f64,
                    -span + 2.0 * span * j as f64 / (cells - 1) as f64,
                );
                if region.boundary_indicator(z, cfg).abs() <= band {
                    continue;
                }
                assert_eq!(region.contains(z, cfg), dec.contains(z), "at {z:?}");
            }
        }
    }

    #[test]
    fn mixed_minor_values() {
        let l = DenseMatrix::identity(2).scaled(-1.0);
        let m = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(mixed_minor(&l, &m, 1, 2).unwrap(), 0.0);

        let z = DenseMatrix::zeros(2);
        assert_eq!(mixed_minor(&z, &m, 1, 2).unwrap(), 0.0);

        // Rotation-scaling block against a scalar L: 2μλ.
        let (mu, nu, lam) = (0.7, 1.3, -2.0);
        let l = DenseMatrix::diag(&[lam, lam]);
        let m = DenseMatrix::from_rows(&[vec![mu, nu], vec![-nu, mu]]).unwrap();
        assert!((mixed_minor(&l, &m, 1, 2).unwrap() - 2.0 * mu * lam).abs() < 1e-14);

        assert_eq!(mixed_minor(&l, &m, 2, 2), Err(ClassifyError::IndexOutOfRange));
        assert_eq!(mixed_minor(&l, &m, 1, 3), Err(ClassifyError::IndexOutOfRange));
    }

    #[test]
    fn unit_disk_pair_is_elliptic() {
        let c = cfg();
        let d = disk(0.0, 1.0).unwrap();
        let curve = pij_region(&d, 1, 2, &c).unwrap();
        assert_eq!(curve.a11, -1.0);
        assert_eq!(curve.a22, -1.0);
        assert_eq!(curve.a33, 1.0);
        assert_eq!(curve.a13, 0.0);
        assert_eq!(curve.kind, ConicKind::Elliptic);
        // −x² − y² + 1 > 0 is the open unit disk.
        assert!(curve.contains(ComplexPoint::new(0.5, 0.5)));
        assert!(!curve.contains(ComplexPoint::new(1.0, 0.4)));
    }

    #[test]
    fn stripe_pair_is_parabolic_and_sector_pair_degenerate() {
        let c = cfg();
        let hs = hstrip(1.0).unwrap();
        assert_eq!(pij_region(&hs, 1, 2, &c).unwrap().kind, ConicKind::Parabolic);

        let sec = conic_sector(FRAC_PI_4).unwrap();
        assert_eq!(pij_region(&sec, 1, 2, &c).unwrap().kind, ConicKind::DegeneratePair);
    }

    #[test]
    fn conic_classification_rules() {
        let c = cfg();
        assert_eq!(classify_conic(-1.0, -1.0, 0.0, 1.0, &c), ConicKind::Elliptic);

        let (mu, nu) = (1.0, 0.8);
        let (l1, l2) = (-1.0, -2.0);
        let a11 = 4.0 * mu * mu;
        let a22 = -4.0 * nu * nu;
        let a13 = mu * (l1 + l2);
        let a33 = l1 * l2;
        assert_eq!(classify_conic(a11, a22, a13, a33, &c), ConicKind::Hyperbolic);

        assert_eq!(classify_conic(0.0, -4.0, 1.0, 2.0, &c), ConicKind::Parabolic);
        assert_eq!(classify_conic(0.0, 0.0, 0.0, 0.0, &c), ConicKind::Degenerate);
    }

    #[test]
    fn diagonal_localization_is_identity_on_diagonal_pairs() {
        let r = LmiRegion::new(
            DenseMatrix::diag(&[-1.0, -2.0]),
            DenseMatrix::diag(&[1.0, -0.5]),
            &cfg(),
        )
        .unwrap();
        let d1 = diagonal_localization(&r);
        assert!((d1.l() - r.l()).frobenius() == 0.0);
        assert!((d1.m() - r.m()).frobenius() == 0.0);
    }

    #[test]
    fn diagonal_localization_of_intro() {
        let c = cfg();
        let d1 = diagonal_localization(&intro_region());
        // Only the (2,2) diagonal entry of M is nonzero: halfplane x < 1/2.
        let (lo, hi) = real_interval(&d1, &c).endpoints().unwrap();
        assert_eq!(lo, f64::NEG_INFINITY);
        assert!((hi - 0.5).abs() < 1e-9);

        // Localization contains the region.
        let r = intro_region();
        for i in 0..64 {
            for j in 0..64 {
                let z = ComplexPoint::new(
                    -2.0 + 4.0 * i as f64 / 63.0,
                    -2.0 + 4.0 * j as f64 / 63.0,
                );
                if r.contains(z, &c) {
                    assert!(d1.contains(z, &c), "at {z:?}");
                }
            }
        }
    }

    #[test]
    fn principal_localization_cases() {
        let c = cfg();
        let r = intro_region();
        let full = principal_localization(&r, &[1, 2, 3]).unwrap();
        assert!((full.l() - r.l()).frobenius() == 0.0);

        let single = principal_localization(&r, &[2]).unwrap();
        let (lo, hi) = real_interval(&single, &c).endpoints().unwrap();
        assert_eq!(lo, f64::NEG_INFINITY);
        assert!((hi - 0.5).abs() < 1e-9);

        for bad in [&[0usize][..], &[2, 2], &[1, 4]] {
            assert!(matches!(
                principal_localization(&r, bad),
                Err(ClassifyError::IndexOutOfRange)
            ));
        }

        // Principal block of a block-diagonal pair is that factor.
        let d = disk(0.0, 2.0).unwrap();
        let vs = vstrip(0.5, 3.0).unwrap();
        let joined = d.intersect(&vs);
        let back = principal_localization(&joined, &[1, 2]).unwrap();
        assert!((back.l() - d.l()).frobenius() == 0.0);
        assert!((back.m() - d.m()).frobenius() == 0.0);
    }

    #[test]
    fn hstrip_decomposes_to_one_stripe() {
        let c = cfg();
        let hs = hstrip(1.5).unwrap();
        let dec = elementary_decomposition(&hs, &c).unwrap();
        assert_eq!(dec.pieces.len(), 1);
        match dec.pieces[0] {
            ElementaryPiece::HorizontalStripe { half_width } => {
                assert!((half_width - 0.75).abs() < 1e-12)
            }
            ref p => panic!("expected stripe, got {p:?}"),
        }
        grid_agrees(&hs, &dec, 3.0, 96, &c);
    }

    #[test]
    fn equal_halfplanes_merge() {
        let c = cfg();
        let alpha = 0.6;
        let r = LmiRegion::new(
            DenseMatrix::diag(&[2.0 * alpha, 2.0 * alpha]),
            DenseMatrix::identity(2),
            &c,
        )
        .unwrap();
        let dec = elementary_decomposition(&r, &c).unwrap();
        assert_eq!(
            dec.pieces,
            vec![ElementaryPiece::ShiftedHalfplane {
                boundary: -alpha,
                orientation: Orientation::TowardMinusInf
            }]
        );
    }

    #[test]
    fn sector_decomposes_to_one_cone() {
        let c = cfg();
        let sec = conic_sector(FRAC_PI_4).unwrap();
        let dec = elementary_decomposition(&sec, &c).unwrap();
        assert_eq!(dec.pieces.len(), 1);
        match dec.pieces[0] {
            ElementaryPiece::ShiftedCone { vertex, half_angle, orientation } => {
                assert!(vertex.abs() < 1e-12);
                assert!((half_angle - FRAC_PI_4).abs() < 1e-12);
                assert_eq!(orientation, Orientation::TowardMinusInf);
            }
            ref p => panic!("expected cone, got {p:?}"),
        }
        grid_agrees(&sec, &dec, 3.0, 96, &c);
    }

    #[test]
    fn vstrip_decomposes_to_two_halfplanes() {
        let c = cfg();
        let vs = vstrip(1.0, 2.0).unwrap();
        let dec = elementary_decomposition(&vs, &c).unwrap();
        assert_eq!(dec.pieces.len(), 2);
        grid_agrees(&vs, &dec, 3.0, 96, &c);
    }

    #[test]
    fn simdiag_matches_elementary_when_commuting() {
        let c = cfg();
        for region in [hstrip(2.0).unwrap(), conic_sector(FRAC_PI_4).unwrap(), vstrip(1.0, 2.0).unwrap()] {
            let a = elementary_decomposition(&region, &c).unwrap();
            let b = decomposition_simdiag(&region, &c).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn simdiag_emits_hyperbola_for_unequal_l() {
        let c = cfg();
        // M is a rotation-scaling block (normal), L diagonal with distinct
        // entries: LM ≠ ML but the pair is congruence-reducible.
        let l = DenseMatrix::diag(&[-1.0, -2.0]);
        let m = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let r = LmiRegion::new(l, m, &c).unwrap();
        let dec = decomposition_simdiag(&r, &c).unwrap();
        let hyper: Vec<_> = dec
            .pieces
            .iter()
            .filter(|p| matches!(p, ElementaryPiece::Hyperbola { .. }))
            .collect();
        assert_eq!(hyper.len(), 1);
        if let ElementaryPiece::Hyperbola { a11, a22, a13, a33 } = hyper[0] {
            // Δ = a22(a11·a33 − a13²) > 0 for a genuine hyperbola.
            let delta3 = a22 * (a11 * a33 - a13 * a13);
            assert!(delta3 > 0.0);
        }
        grid_agrees(&r, &dec, 4.0, 128, &c);

        assert_eq!(
            elementary_decomposition(&r, &c).unwrap_err(),
            ClassifyError::NotCommuting
        );
    }

    #[test]
    fn simdiag_rejects_complex_pencil() {
        let c = cfg();
        // C = Sym(M)⁻¹L has a complex spectrum.
        let l = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let m = DenseMatrix::from_rows(&[vec![1.0, 0.5], vec![-0.5, -1.0]]).unwrap();
        let r = LmiRegion::new(l, m, &c).unwrap();
        match decomposition_simdiag(&r, &c) {
            Err(ClassifyError::NotReducible) | Err(ClassifyError::NotNormal) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn census_of_disk_like_region() {
        let c = cfg();
        let d = disk(0.0, 1.0).unwrap();
        let census = curve_census(&d, &c).unwrap();
        assert_eq!(census.inertia, Inertia { n_pos: 1, n_neg: 1, n_zero: 0 });
        assert_eq!(census.elliptic, 1);
        assert!(census.bounds_hold());
    }

    #[test]
    fn census_with_definite_sym() {
        let c = cfg();
        // Definite Sym(M) of order 3 with nonzero skew: no elliptic pairs.
        let m = DenseMatrix::from_rows(&[
            vec![1.0, 0.4, 0.0],
            vec![-0.4, 1.0, 0.0],
            vec![0.0, 0.0, 1.5],
        ])
        .unwrap();
        let r = LmiRegion::new(DenseMatrix::identity(3).scaled(-1.0), m, &c).unwrap();
        let census = curve_census(&r, &c).unwrap();
        assert_eq!(census.elliptic, 0);
        assert!(census.hyperbolic_or_pair <= 3);
        assert!(census.bounds_hold());
    }

    #[test]
    fn census_with_singular_sym_hits_parabolic() {
        let c = cfg();
        let p = parabola(1.0).unwrap();
        let census = curve_census(&p, &c).unwrap();
        assert!(census.parabolic >= 1);
        assert!(census.bounds_hold());
    }

    #[test]
    fn localization_by_pairs_contains_region() {
        let c = cfg();
        let r = intro_region();
        let n = r.order();
        let eig = sym_eigen(r.sym_m(), &c).unwrap();
        let transformed = r.congruent(&eig.eigenvectors.transpose(), &c).unwrap();
        let mut curves = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                curves.push(pij_region(&transformed, i, j, &c).unwrap());
            }
        }
        for gi in 0..64 {
            for gj in 0..64 {
                let z = ComplexPoint::new(
                    -2.0 + 4.0 * gi as f64 / 63.0,
                    -2.0 + 4.0 * gj as f64 / 63.0,
                );
                if transformed.contains(z, &c) {
                    for curve in &curves {
                        assert!(curve.contains(z), "pair ({}, {}) at {z:?}", curve.i, curve.j);
                    }
                }
            }
        }
    }
}
