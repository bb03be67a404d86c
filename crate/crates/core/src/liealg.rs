//! Finite-dimensional Lie algebras given by rational structure constants.
//!
//! Built-in algebras:
//!
//! * `su2` in the cyclic basis `[e1,e2]=e3`, `[e2,e3]=e1`, `[e3,e1]=e2`;
//! * `so3`, the same constants read as infinitesimal rotations `L1, L2, L3`;
//! * `sl2R` in the basis `(H, E, F)` with `[H,E]=2E`, `[H,F]=−2F`, `[E,F]=H`;
//! * `su3` in a basis of traceless skew-hermitian matrices with Gaussian
//!   rational entries.
//!
//! Spectra are exact Gaussian rationals when every irreducible factor of the
//! characteristic polynomial has Gaussian-rational roots, and certified
//! discs otherwise.

use num::{Complex, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};
use crate::linalg::{coordinates, inertia, Mat, QMat};
use crate::poly::{charpoly, minpoly, Poly};
use crate::rational::{gq, gq_real, gq_to_c64, q, rational_sqrt, GQ, Q};

/// Lie algebra with basis `e_0, …, e_{n−1}` and `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    consts: Vec<Vec<Vec<Q>>>,
    compact: bool,
}

impl LieAlgebra {
    /// Validates antisymmetry; the Jacobi identity is checked separately by
    /// [`LieAlgebra::verify_jacobi`].
    pub fn new(name: impl Into<String>, consts: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let n = consts.len();
        for (i, row) in consts.iter().enumerate() {
            if row.len() != n {
                return Err(JetError::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, c) in row.iter().enumerate() {
                if c.len() != n {
                    return Err(JetError::DimensionMismatch { expected: n, found: c.len() });
                }
                for k in 0..n {
                    if c[k] != -consts[j][i][k].clone() {
                        return Err(JetError::InvalidRepresentation(format!(
                            "structure constants not antisymmetric at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebra { name: name.into(), consts, compact: false })
    }

    /// Builds an algebra from the nonzero brackets `[e_i, e_j] = v` with `i < j`.
    pub fn from_brackets(name: &str, dim: usize, brackets: &[(usize, usize, Vec<Q>)]) -> Self {
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, v) in brackets {
            c[*i][*j] = v.clone();
            c[*j][*i] = v.iter().map(|x| -x.clone()).collect();
        }
        LieAlgebra { name: name.to_string(), consts: c, compact: false }
    }

    /// Algebra spanned by the given matrices, which must close under the
    /// commutator with rational coefficients.
    pub fn from_matrix_basis(name: &str, basis: &[Mat<GQ>]) -> Result<Self> {
        let n = basis.len();
        let m = basis[0].rows();
        let flat: Vec<Vec<GQ>> = basis.iter().map(|b| b.as_slice().to_vec()).collect();
        let mut consts = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = basis[i].commutator(&basis[j]);
                let coords = coordinates(m * m, &flat, c.as_slice())
                    .ok_or_else(|| JetError::InvalidRepresentation("matrices do not close under brackets".into()))?;
                for (k, z) in coords.into_iter().enumerate() {
                    if !z.im.is_zero() {
                        return Err(JetError::InvalidRepresentation("non-real structure constant".into()));
                    }
                    consts[i][j][k] = z.re;
                }
            }
        }
        LieAlgebra::new(name, consts)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::from_brackets(&format!("abelian{dim}"), dim, &[])
    }

    pub fn su2() -> Self {
        let e = |k: usize| unit(3, k);
        let mut a = LieAlgebra::from_brackets("su2", 3, &[(0, 1, e(2)), (1, 2, e(0)), (0, 2, neg(&e(1)))]);
        a.compact = true;
        a
    }

    pub fn so3() -> Self {
        let mut a = LieAlgebra::su2();
        a.name = "so3".into();
        a
    }

    pub fn sl2r() -> Self {
        let (h, e, f) = (unit(3, 0), unit(3, 1), unit(3, 2));
        LieAlgebra::from_brackets(
            "sl2R",
            3,
            &[(0, 1, e.iter().map(|x| x * q(2)).collect()), (0, 2, f.iter().map(|x| x * q(-2)).collect()), (1, 2, h)],
        )
    }

    /// `su(3)`: `i(E11−E22)`, `i(E22−E33)`, then for each pair `a<b` the
    /// matrices `E_ab − E_ba` and `i(E_ab + E_ba)`.
    pub fn su3() -> Self {
        let mut a = LieAlgebra::from_matrix_basis("su3", &su3_matrices()).expect("su3 closes");
        a.compact = true;
        a
    }

    /// Registry lookup by name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "su2" => Ok(Self::su2()),
            "so3" => Ok(Self::so3()),
            "sl2R" | "sl2r" => Ok(Self::sl2r()),
            "su3" => Ok(Self::su3()),
            _ => match name.strip_prefix("abelian").and_then(|d| d.parse().ok()) {
                Some(d) => Ok(Self::abelian(d)),
                None => Err(JetError::Parse(format!("unknown Lie algebra {name:?}"))),
            },
        }
    }

    pub fn with_compact_tag(mut self, compact: bool) -> Self {
        self.compact = compact;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.consts.len()
    }

    pub fn is_tagged_compact(&self) -> bool {
        self.compact
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Q>>] {
        &self.consts
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Q] {
        &self.consts[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, ck) in self.consts[i][j].iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] += &c * ck;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Q]) -> QMat {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect();
        Mat::from_cols(n, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> QMat {
        self.ad_matrix(&unit(self.dim(), i))
    }

    pub fn killing(&self, x: &[Q], y: &[Q]) -> Q {
        (&self.ad_matrix(x) * &self.ad_matrix(y)).trace()
    }

    pub fn killing_matrix(&self) -> QMat {
        let n = self.dim();
        let ads: Vec<QMat> = (0..n).map(|i| self.ad_basis(i)).collect();
        Mat::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace())
    }

    pub fn verify_jacobi(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Cartan's criterion: the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.dim() > 0 && !self.killing_matrix().det().is_zero()
    }

    /// Negative definite Killing form.
    pub fn is_compact_semisimple(&self) -> bool {
        let i = inertia(&self.killing_matrix());
        self.dim() > 0 && i.negative == self.dim()
    }

    /// Checks the compactness tag against the Killing form.
    pub fn validate_compact_tag(&self) -> Result<()> {
        if self.compact && !self.is_compact_semisimple() {
            return Err(JetError::InvalidRepresentation(format!(
                "{} is tagged compact but its Killing form is not negative definite",
                self.name
            )));
        }
        Ok(())
    }

    /// Whether the matrices `ρ(e_i)` satisfy `ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)]`.
    pub fn is_representation(&self, rho: &[QMat]) -> bool {
        if rho.len() != self.dim() {
            return false;
        }
        let m = rho.first().map_or(0, Mat::rows);
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let lhs = combine(&self.consts[i][j], rho, m);
                if lhs != rho[i].commutator(&rho[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `x ↦ Σ x_i φ_i` (with `φ_i ∈ target` in coordinates) is a homomorphism.
    pub fn is_homomorphism_to(&self, target: &LieAlgebra, images: &[Vec<Q>]) -> bool {
        if images.len() != self.dim() {
            return false;
        }
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let lhs = lin_comb(&self.consts[i][j], images, target.dim());
                if lhs != target.bracket(&images[i], &images[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Built-in maximal torus: `e1` for `su2`/`so3`, `H` for `sl2R`, the two
    /// diagonal generators for `su3`.
    pub fn default_torus(&self) -> Result<Vec<Vec<Q>>> {
        match self.name.as_str() {
            "su2" | "so3" => Ok(vec![unit(3, 0)]),
            "sl2R" => Ok(vec![unit(3, 0)]),
            "su3" => Ok(vec![unit(8, 0), unit(8, 1)]),
            other => Err(JetError::Precondition(format!("no built-in torus for {other}"))),
        }
    }

    /// Root data for an abelian subalgebra spanned by `torus`.
    pub fn cartan_data(&self, torus: &[Vec<Q>]) -> Result<CartanData> {
        let n = self.dim();
        for a in torus {
            for b in torus {
                if self.bracket(a, b).iter().any(|c| !c.is_zero()) {
                    return Err(JetError::Precondition("torus elements do not commute".into()));
                }
            }
        }
        let ads: Vec<Mat<GQ>> = torus.iter().map(|h| self.ad_matrix(h).map(|c| gq_real(c.clone()))).collect();
        // A generic combination of the torus separates the joint eigenspaces.
        for attempt in 1..=20i64 {
            let coeffs: Vec<Q> = (0..torus.len()).map(|j| q(attempt.pow(j as u32) + j as i64)).collect();
            let hgen = lin_comb(&coeffs, torus, n);
            let spec = spectrum(&self.ad_matrix(&hgen), SpectrumMode::Exact, 0.0)?;
            let mut roots = Vec::new();
            let mut ok = true;
            let mut zero_mult = 0;
            for (ev, mult) in spec.entries() {
                let z = match ev {
                    Eigenvalue::Exact(z) => z.clone(),
                    Eigenvalue::Approx { .. } => return Err(JetError::InexactSpectrum),
                };
                if z.is_zero() {
                    zero_mult = *mult;
                    continue;
                }
                let shifted = &self.ad_matrix(&hgen).map(|c| gq_real(c.clone())) - &Mat::identity(n).scale(&z);
                let ker = shifted.kernel();
                if ker.len() != 1 || *mult != 1 {
                    ok = false;
                    break;
                }
                let x = ker.into_iter().next().unwrap();
                let pivot = x.iter().position(|c| !c.is_zero()).unwrap();
                let values: Vec<GQ> = ads
                    .iter()
                    .map(|ad| ad.mul_vec(&x)[pivot].clone() / x[pivot].clone())
                    .collect();
                for (ad, val) in ads.iter().zip(&values) {
                    let ax = ad.mul_vec(&x);
                    if ax.iter().zip(&x).any(|(a, b)| *a != b.clone() * val.clone()) {
                        ok = false;
                    }
                }
                roots.push(Root { values, vector: x });
            }
            if ok && zero_mult == torus.len() {
                roots.sort_by(|a, b| cmp_gq_vec(&a.values, &b.values));
                return Ok(CartanData { torus: torus.to_vec(), roots });
            }
        }
        Err(JetError::Precondition("subalgebra is not a Cartan subalgebra with split roots".into()))
    }
}

fn cmp_gq_vec(a: &[GQ], b: &[GQ]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.im.cmp(&y.im).then_with(|| x.re.cmp(&y.re));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn neg(v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| -x.clone()).collect()
}

/// `Σ c_i v_i`.
pub fn lin_comb(c: &[Q], vs: &[Vec<Q>], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (ci, v) in c.iter().zip(vs) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += ci * x;
        }
    }
    out
}

fn combine(c: &[Q], mats: &[QMat], m: usize) -> QMat {
    let mut out = Mat::zeros(m, m);
    for (ci, a) in c.iter().zip(mats) {
        if !ci.is_zero() {
            out = &out + &a.scale(ci);
        }
    }
    out
}

fn su3_matrices() -> Vec<Mat<GQ>> {
    let i = gq(Q::zero(), Q::one());
    let one = gq_real(Q::one());
    let e = |a: usize, b: usize, z: &GQ| {
        let mut m: Mat<GQ> = Mat::zeros(3, 3);
        m[(a, b)] = z.clone();
        m
    };
    let mut out = vec![&e(0, 0, &i) - &e(1, 1, &i), &e(1, 1, &i) - &e(2, 2, &i)];
    for a in 0..3 {
        for b in a + 1..3 {
            out.push(&e(a, b, &one) - &e(b, a, &one));
            out.push(&e(a, b, &i) + &e(b, a, &i));
        }
    }
    out
}

/// A root `α` with `[H_j, X] = α(H_j)·X` for the torus basis `H_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub values: Vec<GQ>,
    pub vector: Vec<GQ>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub torus: Vec<Vec<Q>>,
    pub roots: Vec<Root>,
}

impl CartanData {
    /// `α(h)` for `h = Σ c_j H_j`.
    pub fn root_value(&self, root: &Root, c: &[Q]) -> GQ {
        root.values
            .iter()
            .zip(c)
            .fold(gq_real(Q::zero()), |acc, (v, cj)| acc + v.clone() * gq_real(cj.clone()))
    }

    /// Checks `[H, X_α] = α(H) X_α` for every root and torus element.
    pub fn verify(&self, alg: &LieAlgebra) -> bool {
        self.roots.iter().all(|r| {
            self.torus.iter().zip(&r.values).all(|(h, val)| {
                let ad = alg.ad_matrix(h).map(|c| gq_real(c.clone()));
                let ax = ad.mul_vec(&r.vector);
                ax.iter().zip(&r.vector).all(|(a, x)| *a == x.clone() * val.clone())
            })
        })
    }
}

/// Additive Jordan decomposition `A = S + N` over `ℚ`, computed by Newton
/// iteration `S ← S − s(S)·s'(S)⁻¹` on the squarefree part `s` of the
/// minimal polynomial.
pub fn chevalley_jordan(a: &QMat) -> (QMat, QMat) {
    let s = minpoly(a).squarefree_part();
    let ds = s.derivative();
    let mut sm = a.clone();
    loop {
        let v = s.eval_mat(&sm);
        if v.is_zero() {
            break;
        }
        let inv = ds.eval_mat(&sm).inverse().expect("s' is invertible on the algebra generated by A");
        sm = &sm - &(&v * &inv);
    }
    let nil = a - &sm;
    (sm, nil)
}

pub fn is_semisimple_matrix(a: &QMat) -> bool {
    chevalley_jordan(a).1.is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    Exact,
    Numeric,
}

/// Eigenvalue, exact or enclosed in a disc. `factor` is the monic
/// irreducible factor of the characteristic polynomial it is a root of.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(GQ),
    Approx { center: Complex<f64>, radius: f64, factor: Poly },
}

impl Eigenvalue {
    pub fn approx(&self) -> Complex<f64> {
        match self {
            Eigenvalue::Exact(z) => gq_to_c64(z),
            Eigenvalue::Approx { center, .. } => *center,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Eigenvalue::Exact(_) => 0.0,
            Eigenvalue::Approx { radius, .. } => *radius,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Eigenvalue::Exact(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    entries: Vec<(Eigenvalue, usize)>,
}

impl Spectrum {
    pub fn entries(&self) -> &[(Eigenvalue, usize)] {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|(e, _)| e.is_exact())
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Distinct exact values, if the spectrum is exact.
    pub fn exact_values(&self) -> Option<Vec<GQ>> {
        self.entries
            .iter()
            .map(|(e, _)| match e {
                Eigenvalue::Exact(z) => Some(z.clone()),
                Eigenvalue::Approx { .. } => None,
            })
            .collect()
    }

    pub fn contains_exact(&self, z: &GQ) -> bool {
        self.entries.iter().any(|(e, _)| matches!(e, Eigenvalue::Exact(w) if w == z))
    }
}

/// Gaussian-rational roots of an irreducible factor of degree ≤ 2, if any.
fn exact_roots(f: &Poly) -> Option<Vec<GQ>> {
    match f.degree() {
        1 => Some(vec![gq_real(-f.coeff(0) / f.coeff(1))]),
        2 => {
            let f = f.monic();
            let (b, c) = (f.coeff(1), f.coeff(0));
            let disc = &b * &b - q(4) * &c;
            let half = Q::new(1.into(), 2.into());
            if disc.is_negative() {
                let r = rational_sqrt(&(-disc))?;
                let re = -&b * &half;
                let im = r * &half;
                Some(vec![gq(re.clone(), -im.clone()), gq(re, im)])
            } else {
                let r = rational_sqrt(&disc)?;
                Some(vec![gq((-&b - &r) * &half, Q::zero()), gq((-&b + &r) * &half, Q::zero())])
            }
        }
        _ => None,
    }
}

/// Spectrum of a square rational matrix. In exact mode, any eigenvalue that
/// is not a Gaussian rational yields [`JetError::InexactSpectrum`].
/// Disc radii are at least `tol`.
pub fn spectrum(a: &QMat, mode: SpectrumMode, tol: f64) -> Result<Spectrum> {
    spectrum_of_poly(&charpoly(a), mode, tol)
}

pub fn spectrum_of_poly(p: &Poly, mode: SpectrumMode, tol: f64) -> Result<Spectrum> {
    let (factors, _) = p.factor();
    let mut entries = Vec::new();
    for (f, mult) in factors {
        match exact_roots(&f) {
            Some(rs) => entries.extend(rs.into_iter().map(|z| (Eigenvalue::Exact(z), mult))),
            None => {
                if mode == SpectrumMode::Exact {
                    return Err(JetError::InexactSpectrum);
                }
                for (center, r) in f.certified_roots() {
                    entries.push((Eigenvalue::Approx { center, radius: r.max(tol), factor: f.clone() }, mult));
                }
            }
        }
    }
    entries.sort_by(|(a, _), (b, _)| cmp_eigenvalues(a, b));
    Ok(Spectrum { entries })
}

/// Exact values first, ordered by real then imaginary part; enclosures after.
fn cmp_eigenvalues(a: &Eigenvalue, b: &Eigenvalue) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => x.re.cmp(&y.re).then_with(|| x.im.cmp(&y.im)),
        (Eigenvalue::Exact(_), _) => Ordering::Less,
        (_, Eigenvalue::Exact(_)) => Ordering::Greater,
        (x, y) => {
            let (u, v) = (x.approx(), y.approx());
            u.re.total_cmp(&v.re).then_with(|| u.im.total_cmp(&v.im))
        }
    }
}

/// Three-valued answer of a comparison that may involve enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict3 {
    Disjoint,
    Intersects,
    Undecided,
}

/// Whether two eigenvalues coincide: `Some(true/false)` when decidable.
pub fn eigenvalues_equal(a: &Eigenvalue, b: &Eigenvalue, tol: f64) -> Option<bool> {
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => Some(x == y),
        (Eigenvalue::Exact(z), Eigenvalue::Approx { factor, .. })
        | (Eigenvalue::Approx { factor, .. }, Eigenvalue::Exact(z)) => {
            // Enclosed roots of an irreducible factor are never Gaussian rationals.
            if !factor.is_zero() && !factor.eval_gq(z).is_zero() {
                Some(false)
            } else {
                separated(a, b, tol)
            }
        }
        (
            Eigenvalue::Approx { center: c1, factor: f1, .. },
            Eigenvalue::Approx { center: c2, factor: f2, .. },
        ) => {
            if !f1.is_zero() && !f2.is_zero() && f1 != f2 {
                return Some(false);
            }
            if separated(a, b, tol) == Some(false) {
                return Some(false);
            }
            if !f1.is_zero() && f1 == f2 && c1 == c2 {
                return Some(true);
            }
            None
        }
    }
}

fn separated(a: &Eigenvalue, b: &Eigenvalue, tol: f64) -> Option<bool> {
    let d = (a.approx() - b.approx()).norm();
    if d > a.radius() + b.radius() + tol {
        Some(false)
    } else {
        None
    }
}

/// Disjointness of two finite sets of eigenvalues.
pub fn disjointness(a: &[Eigenvalue], b: &[Eigenvalue], tol: f64) -> Verdict3 {
    let mut undecided = false;
    for x in a {
        for y in b {
            match eigenvalues_equal(x, y, tol) {
                Some(true) => return Verdict3::Intersects,
                Some(false) => {}
                None => undecided = true,
            }
        }
    }
    if undecided {
        Verdict3::Undecided
    } else {
        Verdict3::Disjoint
    }
}

/// Splits a polynomial into the factor with roots on the imaginary axis and
/// the factor with roots off it.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisSplit {
    pub axis: Poly,
    pub off_axis: Poly,
    /// Irreducible factors with roots both on and off the axis; their real
    /// root subspaces are not defined over `ℚ`.
    pub mixed: Vec<Poly>,
}

/// Classifies the irreducible factors of `p` (with multiplicity): `x` and
/// even factors `h(x²)` whose `h` has only negative real roots lie on the
/// imaginary axis.
pub fn axis_split(p: &Poly) -> AxisSplit {
    let (factors, _) = p.factor();
    let mut axis = Poly::one();
    let mut off = Poly::one();
    let mut mixed = Vec::new();
    for (f, mult) in factors {
        let fm = f.pow(mult);
        match classify_factor(&f) {
            AxisClass::Axis => axis = axis.mul(&fm),
            AxisClass::Off => off = off.mul(&fm),
            AxisClass::Mixed => {
                mixed.push(f.clone());
                off = off.mul(&fm);
            }
        }
    }
    AxisSplit { axis, off_axis: off, mixed }
}

enum AxisClass {
    Axis,
    Off,
    Mixed,
}

fn classify_factor(f: &Poly) -> AxisClass {
    if *f == Poly::x() {
        return AxisClass::Axis;
    }
    // Imaginary-axis roots come in pairs ±it, so they are roots of gcd(f, f(−x)).
    let g = f.gcd(&f.reflect());
    if g.degree() == 0 {
        return AxisClass::Off;
    }
    let h = match g.even_part_in_square() {
        Some(h) => h,
        None => return AxisClass::Mixed,
    };
    let neg = h.count_negative_real_roots();
    if neg == h.degree() && g.degree() == f.degree() {
        AxisClass::Axis
    } else if neg == 0 {
        AxisClass::Off
    } else {
        AxisClass::Mixed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn qm(rows: &[&[i64]]) -> QMat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn ad_matrices_of_built_ins() {
        let su2 = LieAlgebra::su2();
        assert_eq!(su2.ad_basis(0), qm(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]));
        assert!(su2.ad_matrix(&[q(0), q(0), q(0)]).is_zero());
        let sl2 = LieAlgebra::sl2r();
        assert_eq!(sl2.ad_basis(0), qm(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
    }

    #[test]
    fn killing_forms() {
        let su2 = LieAlgebra::su2();
        assert_eq!(su2.killing(&unit(3, 0), &unit(3, 0)), q(-2));
        assert_eq!(su2.killing(&unit(3, 0), &[q(0), q(0), q(0)]), q(0));
        assert_eq!(LieAlgebra::sl2r().killing(&unit(3, 0), &unit(3, 0)), q(8));
        assert!(su2.is_compact_semisimple());
        assert!(LieAlgebra::sl2r().is_semisimple());
        assert!(!LieAlgebra::sl2r().is_compact_semisimple());
        assert!(!LieAlgebra::abelian(2).is_semisimple());
    }

    #[test]
    fn su3_is_compact_simple_with_roots() {
        let su3 = LieAlgebra::su3();
        assert_eq!(su3.dim(), 8);
        assert!(su3.verify_jacobi());
        assert!(su3.is_compact_semisimple());
        let cd = su3.cartan_data(&su3.default_torus().unwrap()).unwrap();
        assert_eq!(cd.roots.len(), 6);
        assert!(cd.verify(&su3));
        for r in &cd.roots {
            assert!(r.values.iter().all(|v| v.re.is_zero()));
        }
    }

    #[test]
    fn su2_roots_are_plus_minus_i() {
        let su2 = LieAlgebra::su2();
        let cd = su2.cartan_data(&su2.default_torus().unwrap()).unwrap();
        let vals: Vec<GQ> = cd.roots.iter().map(|r| r.values[0].clone()).collect();
        assert_eq!(vals, vec![gq(q(0), q(-1)), gq(q(0), q(1))]);
        assert!(cd.verify(&su2));
    }

    #[test]
    fn jacobi_detects_broken_constants() {
        assert!(LieAlgebra::su2().verify_jacobi());
        assert!(LieAlgebra::abelian(3).verify_jacobi());
        let mut c = LieAlgebra::su2().structure_constants().to_vec();
        c[0][1][0] = q(1);
        c[1][0][0] = q(-1);
        assert!(!LieAlgebra::new("broken", c).unwrap().verify_jacobi());
    }

    #[test]
    fn chevalley_jordan_examples() {
        let d = qm(&[&[2, 0], &[0, 3]]);
        assert_eq!(chevalley_jordan(&d), (d.clone(), Mat::zeros(2, 2)));
        let j = qm(&[&[1, 1], &[0, 1]]);
        assert_eq!(chevalley_jordan(&j), (Mat::identity(2), qm(&[&[0, 1], &[0, 0]])));
        let r = qm(&[&[0, -1], &[1, 0]]);
        assert_eq!(chevalley_jordan(&r).0, r);
        // Rotation block with a nilpotent coupling.
        let a = qm(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let (s, n) = chevalley_jordan(&a);
        assert_eq!(&s * &n, &n * &s);
        assert!(n.pow(4).is_zero());
        assert!(minpoly(&s).squarefree_part() == minpoly(&s));
    }

    #[test]
    fn spectra() {
        let s = spectrum(&qm(&[&[1, 0], &[0, -1]]), SpectrumMode::Exact, 0.0).unwrap();
        assert_eq!(s.exact_values().unwrap(), vec![gq_real(q(-1)), gq_real(q(1))]);
        let s = spectrum(&qm(&[&[0, -1], &[1, 0]]), SpectrumMode::Exact, 0.0).unwrap();
        assert_eq!(s.exact_values().unwrap(), vec![gq(q(0), q(-1)), gq(q(0), q(1))]);
        let a = qm(&[&[0, -2], &[1, 0]]);
        assert_eq!(spectrum(&a, SpectrumMode::Exact, 0.0), Err(JetError::InexactSpectrum));
        let s = spectrum(&a, SpectrumMode::Numeric, 1e-12).unwrap();
        assert!(!s.is_exact());
        for (e, _) in s.entries() {
            let z = e.approx();
            assert!(z.re.abs() <= e.radius() + 1e-12);
            assert!((z.im.abs() - 2f64.sqrt()).abs() <= e.radius() + 1e-12);
        }
    }

    #[test]
    fn three_valued_disjointness() {
        let sqrt2 = spectrum_of_poly(&Poly::from_ints(&[-2, 0, 1]), SpectrumMode::Numeric, 1e-12).unwrap();
        let roots: Vec<Eigenvalue> = sqrt2.entries().iter().map(|(e, _)| e.clone()).collect();
        let close = [Eigenvalue::Exact(gq_real(qf(7, 5)))];
        // An irrational root never equals a rational point, however close.
        assert_eq!(disjointness(&roots, &close, 0.1), Verdict3::Disjoint);
        let blurred = [Eigenvalue::Approx {
            center: Complex::new(1.4, 0.0),
            radius: 0.0,
            factor: Poly::zero(),
        }];
        assert_eq!(disjointness(&roots, &blurred, 0.1), Verdict3::Undecided);
        assert_eq!(disjointness(&roots, &blurred, 1e-6), Verdict3::Disjoint);
        let one = [Eigenvalue::Exact(gq_real(q(1)))];
        assert_eq!(disjointness(&one, &one, 0.0), Verdict3::Intersects);
    }

    #[test]
    fn axis_classification() {
        let split = axis_split(&Poly::from_ints(&[0, -1, 0, 1]));
        // x³ − x = x(x−1)(x+1)
        assert_eq!(split.axis, Poly::x());
        let split = axis_split(&Poly::from_ints(&[1, 0, 1]).mul(&Poly::from_ints(&[2, 0, -1])));
        assert_eq!(split.axis, Poly::from_ints(&[1, 0, 1]));
        assert!(split.mixed.is_empty());
        let split = axis_split(&Poly::from_ints(&[-1, 0, -2, 0, 1]));
        assert_eq!(split.mixed.len(), 1);
    }
}
