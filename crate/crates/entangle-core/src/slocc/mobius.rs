//! Extended complex plane, Moebius maps, cross-ratios and the 24-element
//! rotation group preserving normal systems.

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64, ONE, ZERO};
use std::fmt;

/// Projective point (alpha : beta) with max(|alpha|, |beta|) = 1; beta = 0 is infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedComplex {
    pub alpha: C64,
    pub beta: C64,
}

impl ExtendedComplex {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let s = alpha.norm().max(beta.norm());
        if s == 0.0 || !s.is_finite() {
            return Err(Error::Degenerate("projective point (0 : 0)".into()));
        }
        Ok(ExtendedComplex { alpha: alpha / s, beta: beta / s })
    }

    pub fn finite(z: C64) -> Self {
        ExtendedComplex::new(z, ONE).expect("finite point")
    }

    pub fn infinity() -> Self {
        ExtendedComplex { alpha: ONE, beta: ZERO }
    }

    pub fn is_infinite(&self) -> bool {
        self.beta == ZERO
    }

    pub fn value(&self) -> Option<C64> {
        (!self.is_infinite()).then(|| self.alpha / self.beta)
    }

    /// Chordal distance on the Riemann sphere, in [0, 1].
    pub fn chordal(&self, other: &ExtendedComplex) -> f64 {
        let num = (self.alpha * other.beta - other.alpha * self.beta).norm();
        let n1 = (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt();
        let n2 = (other.alpha.norm_sqr() + other.beta.norm_sqr()).sqrt();
        num / (n1 * n2)
    }
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        ExtendedComplex::finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => write!(f, "inf"),
            Some(z) => write!(f, "({:.12}, {:.12})", z.re, z.im),
        }
    }
}

// [p, q] = alpha_p beta_q - alpha_q beta_p
fn bracket(p: &ExtendedComplex, q: &ExtendedComplex) -> C64 {
    p.alpha * q.beta - q.alpha * p.beta
}

/// z -> (az + b)/(cz + d) with ad - bc = 1. `a` and `-a` give the same map;
/// `flipped` records whether the stored matrix is the negated choice of a
/// construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusTransform {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub flipped: bool,
}

impl MobiusTransform {
    pub fn new(a: C64, b: C64, cc: C64, d: C64) -> Result<Self> {
        let det = a * d - b * cc;
        if det.norm() < 1e-300 {
            return Err(Error::Degenerate("singular Moebius matrix".into()));
        }
        let s = det.sqrt();
        Ok(MobiusTransform { a: a / s, b: b / s, c: cc / s, d: d / s, flipped: false })
    }

    pub fn identity() -> Self {
        MobiusTransform { a: ONE, b: ZERO, c: ZERO, d: ONE, flipped: false }
    }

    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape("Moebius maps come from 2x2 matrices".into()));
        }
        Self::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_rows(&[vec![self.a, self.b], vec![self.c, self.d]])
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, z: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::new(self.a * z.alpha + self.b * z.beta, self.c * z.alpha + self.d * z.beta)
            .expect("invertible map")
    }

    pub fn apply_c(&self, z: C64) -> ExtendedComplex {
        self.apply(&ExtendedComplex::finite(z))
    }

    /// self after other.
    pub fn compose(&self, other: &MobiusTransform) -> MobiusTransform {
        MobiusTransform {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
            flipped: self.flipped ^ other.flipped,
        }
    }

    pub fn inverse(&self) -> MobiusTransform {
        MobiusTransform { a: self.d, b: -self.b, c: -self.c, d: self.a, flipped: self.flipped }
    }

    /// Same map as a projective transformation (matrices equal up to sign).
    pub fn same_map(&self, other: &MobiusTransform, tol: f64) -> bool {
        let m = [self.a, self.b, self.c, self.d];
        let n = [other.a, other.b, other.c, other.d];
        let plus = m.iter().zip(&n).all(|(x, y)| (x - y).norm() <= tol);
        let minus = m.iter().zip(&n).all(|(x, y)| (x + y).norm() <= tol);
        plus || minus
    }
}

/// The map sending p1, p2, p3 to 0, 1, infinity.
fn to_standard(p: &[ExtendedComplex; 3]) -> Result<MobiusTransform> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if p[i].chordal(&p[j]) < 1e-12 {
            return Err(Error::Degenerate("triplet points must be pairwise distinct".into()));
        }
    }
    let k = bracket(&p[1], &p[2]);
    let k2 = bracket(&p[1], &p[0]);
    MobiusTransform::new(k * p[0].beta, -k * p[0].alpha, k2 * p[2].beta, -k2 * p[2].alpha)
}

/// The unique map with src[i] -> dst[i].
pub fn mobius_from_triplets(src: &[ExtendedComplex; 3], dst: &[ExtendedComplex; 3]) -> Result<MobiusTransform> {
    Ok(to_standard(dst)?.inverse().compose(&to_standard(src)?))
}

/// (z3 - z1)(z4 - z2) / ((z3 - z2)(z4 - z1)).
pub fn cross_ratio(
    z1: &ExtendedComplex,
    z2: &ExtendedComplex,
    z3: &ExtendedComplex,
    z4: &ExtendedComplex,
) -> Result<ExtendedComplex> {
    let num = bracket(z3, z1) * bracket(z4, z2);
    let den = bracket(z3, z2) * bracket(z4, z1);
    ExtendedComplex::new(num, den).map_err(|_| Error::Degenerate("coincident points in cross-ratio".into()))
}

/// lambda, 1/lambda, 1-lambda, 1/(1-lambda), (lambda-1)/lambda, lambda/(lambda-1),
/// with duplicates removed.
pub fn six_values(lambda: C64) -> Result<Vec<C64>> {
    if lambda.norm() < 1e-14 || (lambda - ONE).norm() < 1e-14 {
        return Err(Error::Degenerate("cross-ratio 0 or 1 comes from coincident points".into()));
    }
    let l = lambda;
    let all = [l, ONE / l, ONE - l, ONE / (ONE - l), (l - ONE) / l, l / (l - ONE)];
    let mut out: Vec<C64> = Vec::new();
    for v in all {
        if !out.iter().any(|w| (w - v).norm() < 1e-12 * (1.0 + v.norm())) {
            out.push(v);
        }
    }
    Ok(out)
}

/// R_n(pi/2) = (I - i n.sigma)/sqrt 2 for n = x, y, z.
pub fn rotation_generators() -> [CMatrix; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let rx = CMatrix::from_rows(&[vec![c(s, 0.0), c(0.0, -s)], vec![c(0.0, -s), c(s, 0.0)]]);
    let ry = CMatrix::from_rows(&[vec![c(s, 0.0), c(-s, 0.0)], vec![c(s, 0.0), c(s, 0.0)]]);
    let rz = CMatrix::from_rows(&[vec![c(s, -s), ZERO], vec![ZERO, c(s, s)]]);
    [rx, ry, rz]
}

fn equal_up_to_sign(a: &CMatrix, b: &CMatrix) -> bool {
    a.approx_eq(b, 1e-9) || a.approx_eq(&b.scale(-ONE), 1e-9)
}

/// Closure of the three pi/2 rotations, one representative per projective class.
pub fn g24_group() -> Vec<CMatrix> {
    let gens = rotation_generators();
    let mut elems = vec![CMatrix::identity(2)];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in &gens {
                let p = g * e;
                if !elems.iter().any(|x| equal_up_to_sign(x, &p)) {
                    elems.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    elems
}

/// Set of the form {z, 1/z, -z, -1/z}.
pub fn is_normal_system(points: &[ExtendedComplex], tol: f64) -> bool {
    if points.len() != 4 {
        return false;
    }
    let inv = MobiusTransform { a: ZERO, b: ONE, c: ONE, d: ZERO, flipped: false };
    let neg = MobiusTransform { a: c(0.0, 1.0), b: ZERO, c: ZERO, d: c(0.0, -1.0), flipped: false };
    [inv, neg].iter().all(|m| {
        let img: Vec<ExtendedComplex> = points.iter().map(|p| m.apply(p)).collect();
        multiset_distance(points, &img) <= tol
    })
}

/// Smallest over matchings of the largest chordal distance between paired points.
pub fn multiset_distance(a: &[ExtendedComplex], b: &[ExtendedComplex]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    let mut best = f64::INFINITY;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let worst = (0..n).map(|i| a[i].chordal(&b[p[i]])).fold(0.0, f64::max);
        best = best.min(worst);
    });
    best
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// A map T sending the four points onto {z0, 1/z0, -z0, -1/z0}, with z0
/// from 4z^2/(1+z^2)^2 = cross_ratio solved as a quadratic in z^2.
pub fn normal_form_transform(roots: &[ExtendedComplex; 4]) -> Result<(MobiusTransform, C64)> {
    let lam = cross_ratio(&roots[0], &roots[1], &roots[2], &roots[3])?
        .value()
        .ok_or_else(|| Error::Degenerate("coincident points".into()))?;
    if lam.norm() < 1e-12 || (lam - ONE).norm() < 1e-12 {
        return Err(Error::Degenerate("coincident points".into()));
    }
    let u = (c(4.0, 0.0) - lam * 2.0 + (ONE - lam).sqrt() * 4.0) / (lam * 2.0);
    let z0 = u.sqrt();
    let dst = [ExtendedComplex::finite(z0), ExtendedComplex::finite(ONE / z0), ExtendedComplex::finite(-z0)];
    let t = mobius_from_triplets(&[roots[0], roots[1], roots[2]], &dst)?;
    Ok((t, z0))
}

/// Root map induced by an operator O on the split site: the roots of
/// E(z psi0 + psi1) move by the inverse of the Moebius map of O^T,
/// zeta -> (d zeta - c)/(-b zeta + a).
pub fn root_map(o: &CMatrix) -> Result<MobiusTransform> {
    Ok(MobiusTransform::from_matrix(&o.transpose())?.inverse())
}

/// Determinant-one operator whose root map is m (sign ambiguity remains).
pub fn operator_from_mobius(m: &MobiusTransform) -> CMatrix {
    m.inverse().to_matrix().transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ec(re: f64, im: f64) -> ExtendedComplex {
        ExtendedComplex::finite(c(re, im))
    }

    #[test]
    fn triplets() {
        let std3 = [ec(0.0, 0.0), ec(1.0, 0.0), ExtendedComplex::infinity()];
        let id = mobius_from_triplets(&std3, &std3).unwrap();
        assert!(id.same_map(&MobiusTransform::identity(), 1e-12));
        let swap = mobius_from_triplets(&std3, &[ec(1.0, 0.0), ec(0.0, 0.0), ExtendedComplex::infinity()]).unwrap();
        let want = MobiusTransform::new(-ONE, ONE, ZERO, ONE).unwrap();
        assert!(swap.same_map(&want, 1e-12));
        assert!(mobius_from_triplets(&[ec(1.0, 0.0), ec(1.0, 0.0), ec(2.0, 0.0)], &std3).is_err());
        for z in [c(0.3, -2.0), c(5.0, 1.0)] {
            assert!(id.apply_c(z).chordal(&ExtendedComplex::finite(z)) < 1e-14);
        }
    }

    #[test]
    fn cross_ratio_values() {
        let z = c(2.0, 0.0);
        let cr = cross_ratio(&z.into(), &(ONE / z).into(), &(-z).into(), &(-ONE / z).into()).unwrap();
        assert!((cr.value().unwrap() - c(16.0 / 25.0, 0.0)).norm() < 1e-14);
        let six = six_values(c(2.0, 0.0)).unwrap();
        assert_eq!(six.len(), 3);
        assert!(six_values(ONE).is_err());
    }

    #[test]
    fn g24() {
        let g = g24_group();
        assert_eq!(g.len(), 24);
        let rx = MobiusTransform::from_matrix(&rotation_generators()[0]).unwrap();
        let want = MobiusTransform::new(ONE, c(0.0, -1.0), c(0.0, -1.0), ONE).unwrap();
        assert!(rx.same_map(&want, 1e-12));
        let z = c(0.7, 0.4);
        let normal: Vec<ExtendedComplex> = [z, ONE / z, -z, -ONE / z].iter().map(|&w| w.into()).collect();
        assert!(is_normal_system(&normal, 1e-12));
        for o in &g {
            let m = MobiusTransform::from_matrix(o).unwrap();
            let img: Vec<ExtendedComplex> = normal.iter().map(|p| m.apply(p)).collect();
            assert!(is_normal_system(&img, 1e-9));
        }
    }

    #[test]
    fn normal_form_of_normal_set() {
        let z = c(2.0, 0.0);
        let pts = [z.into(), (ONE / z).into(), (-z).into(), (-ONE / z).into()];
        let (t, z0) = normal_form_transform(&pts).unwrap();
        let img: Vec<ExtendedComplex> = pts.iter().map(|p| t.apply(p)).collect();
        assert!(is_normal_system(&img, 1e-10));
        let g: Vec<MobiusTransform> = g24_group().iter().map(|o| MobiusTransform::from_matrix(o).unwrap()).collect();
        assert!(g.iter().any(|m| m.same_map(&t, 1e-9)), "z0 = {z0}");
    }

    #[test]
    fn operator_round_trip() {
        let o = CMatrix::from_rows(&[vec![c(1.0, 0.5), c(0.2, 0.0)], vec![c(-0.3, 1.0), c(0.7, -0.1)]]);
        let m = root_map(&o).unwrap();
        let back = operator_from_mobius(&m);
        let o1 = MobiusTransform::from_matrix(&o).unwrap().to_matrix();
        assert!(equal_up_to_sign(&back, &o1));
        assert!(root_map(&CMatrix::identity(2)).unwrap().same_map(&MobiusTransform::identity(), 1e-15));
    }
}
