//! Constructors for named state families. Every constructor returns a
//! normalized state.

use crate::algebra::{combinations, OrthogonalArray};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{r, C64, ONE};
use crate::state::PureState;
use std::f64::consts::PI;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// (|0...0> + |1...1> + ... + |d-1...d-1>)/sqrt(d)
pub fn ghz(n: usize, d: usize) -> Result<PureState> {
    if n < 2 || d < 2 {
        return Err(Error::Invalid("GHZ needs n >= 2 and d >= 2".into()));
    }
    PureState::from_terms(&vec![d; n], (0..d).map(|i| (vec![i; n], ONE)))?.normalize()
}

pub fn w(n: usize) -> Result<PureState> {
    dicke(n, 1)
}

/// Uniform superposition of the n-qubit kets with k ones.
pub fn dicke(n: usize, k: usize) -> Result<PureState> {
    if n < 1 || k > n {
        return Err(Error::Invalid(format!("Dicke state needs 0 <= k <= n, got k = {k}, n = {n}")));
    }
    let terms = combinations(n, k).into_iter().map(|ones| {
        let mut idx = vec![0; n];
        for o in ones {
            idx[o] = 1;
        }
        (idx, ONE)
    });
    PureState::from_terms(&vec![2; n], terms)?.normalize()
}

/// Star (theta, phi) on the sphere: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
pub type Star = (f64, f64);

/// Symmetrization of the product of the star spinors over all orderings.
///
/// Every ket of weight k receives k!(N-k)! times the k-th elementary
/// symmetric combination of the spinor components.
pub fn majorana_state(stars: &[Star]) -> Result<PureState> {
    let n = stars.len();
    if n == 0 {
        return Err(Error::Invalid("constellation needs at least one star".into()));
    }
    if stars.iter().any(|(t, p)| !t.is_finite() || !p.is_finite()) {
        return Err(Error::Invalid("non-finite star angle".into()));
    }
    // coefficients of prod_s (a_s + b_s t)
    let mut poly = vec![ONE];
    for &(theta, phi) in stars {
        let a = r((theta / 2.0).cos());
        let b = C64::from_polar((theta / 2.0).sin(), phi);
        let mut next = vec![C64::new(0.0, 0.0); poly.len() + 1];
        for (k, &p) in poly.iter().enumerate() {
            next[k] += p * a;
            next[k + 1] += p * b;
        }
        poly = next;
    }
    let fact = |m: usize| (1..=m).map(|x| x as f64).product::<f64>();
    let mut psi = PureState::qubits(n);
    for (k, &e) in poly.iter().enumerate() {
        let amp = e * (fact(k) * fact(n - k));
        if amp.norm() < 1e-14 {
            continue;
        }
        for ones in combinations(n, k) {
            let mut idx = vec![0; n];
            for o in ones {
                idx[o] = 1;
            }
            psi.add(&idx, amp)?;
        }
    }
    if psi.norm() < 1e-12 {
        return Err(Error::Degenerate("constellation amplitudes cancel".into()));
    }
    psi.normalize()
}

/// (sqrt(C(N,m)) |0...0> - (-1)^(N+m) |D>) / sqrt(1 + C(N,m)) where |D> is
/// the Dicke state with N - m excitations.
pub fn psi_family(n: usize, m: usize) -> Result<PureState> {
    if m > n || n < 2 {
        return Err(Error::Invalid(format!("need 0 <= m <= n, got m = {m}, n = {n}")));
    }
    let b = binomial(n, m) as f64;
    let sign = if (n + m) % 2 == 0 { -1.0 } else { 1.0 };
    let mut psi = PureState::qubits(n);
    psi.add(&vec![0; n], r(b.sqrt()))?;
    let d = dicke(n, n - m)?;
    for (idx, &a) in d.terms() {
        psi.add(idx, a * sign)?;
    }
    psi.normalize()
}

/// (1/sqrt|E|) sum over edges of |1 on e, 0 elsewhere>.
pub fn excitation_state(g: &Hypergraph) -> Result<PureState> {
    if g.n_edges() == 0 {
        return Err(Error::Invalid("excitation state needs at least one edge".into()));
    }
    let n = g.n_vertices();
    let terms = g.edges().iter().map(|e| {
        let mut idx = vec![0; n];
        for &v in e {
            idx[v] = 1;
        }
        (idx, ONE)
    });
    PureState::from_terms(&vec![2; n], terms)?.normalize()
}

/// (1/sqrt r) sum over rows of phase_row |row>.
pub fn state_from_oa(oa: &OrthogonalArray, phases: Option<&[C64]>) -> Result<PureState> {
    if let Some(p) = phases {
        if p.len() != oa.n_rows() {
            return Err(Error::Shape(format!("{} phases for {} rows", p.len(), oa.n_rows())));
        }
        if p.iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::Invalid("phases must have unit modulus".into()));
        }
    }
    let terms = oa.rows().iter().enumerate().map(|(i, row)| (row.clone(), phases.map_or(ONE, |p| p[i])));
    PureState::from_terms(&vec![oa.alphabet(); oa.n_cols()], terms)?.normalize()
}

/// (a+d)/2 (|0000>+|1111>) + (a-d)/2 (|0011>+|1100>)
/// + (b+c)/2 (|0101>+|1010>) + (b-c)/2 (|0110>+|1001>), normalized.
pub fn gabcd_state(a: C64, b: C64, cc: C64, d: C64) -> Result<PureState> {
    let terms = [
        ([0, 0, 0, 0], (a + d) / 2.0),
        ([1, 1, 1, 1], (a + d) / 2.0),
        ([0, 0, 1, 1], (a - d) / 2.0),
        ([1, 1, 0, 0], (a - d) / 2.0),
        ([0, 1, 0, 1], (b + cc) / 2.0),
        ([1, 0, 1, 0], (b + cc) / 2.0),
        ([0, 1, 1, 0], (b - cc) / 2.0),
        ([1, 0, 0, 1], (b - cc) / 2.0),
    ];
    let psi = PureState::from_terms(&[2, 2, 2, 2], terms.into_iter().map(|(i, z)| (i.to_vec(), z)))?;
    if psi.norm() < 1e-300 {
        return Err(Error::Degenerate("all G_abcd parameters vanish".into()));
    }
    psi.normalize()
}

/// Six-term four-qubit state with third-root-of-unity phases.
pub fn m4_state() -> Result<PureState> {
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let terms = [
        ([0, 0, 1, 1], ONE),
        ([1, 1, 0, 0], ONE),
        ([1, 0, 1, 0], w),
        ([0, 1, 0, 1], w),
        ([1, 0, 0, 1], w * w),
        ([0, 1, 1, 0], w * w),
    ];
    PureState::from_terms(&[2, 2, 2, 2], terms.into_iter().map(|(i, z)| (i.to_vec(), z)))?.normalize()
}

/// (|001> + w|010> + w^2|100>)/sqrt 3 with w = exp(2 pi i/3).
pub fn chi3() -> Result<PureState> {
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let terms = [([0, 0, 1], ONE), ([0, 1, 0], w), ([1, 0, 0], w * w)];
    PureState::from_terms(&[2, 2, 2], terms.into_iter().map(|(i, z)| (i.to_vec(), z)))?.normalize()
}

/// sum_{i,j} |i, j, i+j, 2i+j> / d over Z_d.
pub fn ame4_odd(d: usize) -> Result<PureState> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Invalid(format!("the four-party construction needs odd d >= 3, got {d}")));
    }
    let mut terms = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            terms.push((vec![i, j, (i + j) % d, (2 * i + j) % d], ONE));
        }
    }
    PureState::from_terms(&[d; 4], terms)?.normalize()
}

/// sum_{i,j} |i, j, i+j, 2i+j, 3i+j> / d for prime d >= 5.
pub fn ame5_minimal(d: usize) -> Result<PureState> {
    if d < 5 || !crate::algebra::is_prime(d) {
        return Err(Error::Invalid(format!("minimal-support five-party construction needs prime d >= 5, got {d}")));
    }
    let mut terms = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            terms.push((vec![i, j, (i + j) % d, (2 * i + j) % d, (3 * i + j) % d], ONE));
        }
    }
    PureState::from_terms(&[d; 5], terms)?.normalize()
}

/// sum_{i,j,l} w^{(3i+j) l} |i, j, i+j, 2i+j+l, l> / sqrt(d^3), w = exp(2 pi i/d).
pub fn ame5_nonminimal(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::Invalid("d must be at least 2".into()));
    }
    let mut terms = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let ph = C64::from_polar(1.0, 2.0 * PI * (((3 * i + j) * l) % d) as f64 / d as f64);
                terms.push((vec![i, j, (i + j) % d, (2 * i + j + l) % d, l], ph));
            }
        }
    }
    PureState::from_terms(&[d; 5], terms)?.normalize()
}

/// Minimal-support AME(6,4) from the hexacode over GF(4) (w encoded as 2,
/// w^2 as 3), with phase e^{i phi} on |000000>.
pub fn ame6_4(phi: f64) -> Result<PureState> {
    use crate::algebra::{oa_from_generator, FiniteRing, GeneratorMatrix};
    let ring = FiniteRing::galois_default(4)?;
    let rows = vec![vec![1, 0, 0, 1, 2, 2], vec![0, 1, 0, 2, 1, 2], vec![0, 0, 1, 2, 2, 1]];
    let oa = oa_from_generator(&GeneratorMatrix::new(ring, rows)?)?;
    let terms = oa.rows().iter().map(|row| {
        let ph = if row.iter().all(|&s| s == 0) { C64::from_polar(1.0, phi) } else { ONE };
        (row.clone(), ph)
    });
    PureState::from_terms(&[4; 6], terms)?.normalize()
}

/// Parameters of the G_abcd family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gabcd {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Gabcd {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Gabcd { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, cc: f64, d: f64) -> Self {
        Gabcd { a: r(a), b: r(b), c: r(cc), d: r(d) }
    }

    pub fn as_array(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(v: [C64; 4]) -> Self {
        Gabcd { a: v[0], b: v[1], c: v[2], d: v[3] }
    }

    pub fn state(&self) -> Result<PureState> {
        gabcd_state(self.a, self.b, self.c, self.d)
    }

    /// a^2, b^2, c^2, d^2 pairwise distinct.
    pub fn is_generic(&self, tol: f64) -> bool {
        let sq: Vec<C64> = self.as_array().iter().map(|z| z * z).collect();
        (0..4).all(|i| (i + 1..4).all(|j| (sq[i] - sq[j]).norm() > tol))
    }
}

/// Builds a state by name and parameters, for the CLI and the demo.
///
/// Names: ghz:n,d  w:n  dicke:n,k  psi:n,m  m4  chi3  ame4:d  ame5min:d
/// ame5:d  ame6:phi  gabcd:a,b,c,d (real)  majorana:t1,p1,t2,p2,...
pub fn by_name(spec: &str) -> Result<PureState> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let floats = || -> Result<Vec<f64>> {
        params
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad parameter `{t}`"))))
            .collect()
    };
    let ints = |k: usize| -> Result<Vec<usize>> {
        let v: Vec<usize> = params
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter `{t}`"))))
            .collect::<Result<_>>()?;
        if v.len() != k {
            return Err(Error::Parse(format!("state `{name}` takes {k} integer parameter(s)")));
        }
        Ok(v)
    };
    match name {
        "ghz" => {
            let v = ints(2)?;
            ghz(v[0], v[1])
        }
        "w" => w(ints(1)?[0]),
        "dicke" => {
            let v = ints(2)?;
            dicke(v[0], v[1])
        }
        "psi" => {
            let v = ints(2)?;
            psi_family(v[0], v[1])
        }
        "m4" => m4_state(),
        "chi3" => chi3(),
        "ame4" => ame4_odd(ints(1)?[0]),
        "ame5min" => ame5_minimal(ints(1)?[0]),
        "ame5" => ame5_nonminimal(ints(1)?[0]),
        "ame6" => match floats()?.as_slice() {
            [phi] => ame6_4(*phi),
            _ => Err(Error::Parse("ame6 takes one phase parameter".into())),
        },
        "gabcd" => {
            let v = floats()?;
            if v.len() != 4 {
                return Err(Error::Parse("gabcd takes four real parameters".into()));
            }
            gabcd_state(r(v[0]), r(v[1]), r(v[2]), r(v[3]))
        }
        "majorana" => {
            let v = floats()?;
            if v.is_empty() || v.len() % 2 != 0 {
                return Err(Error::Parse("majorana takes theta,phi pairs".into()));
            }
            let stars: Vec<Star> = v.chunks(2).map(|p| (p[0], p[1])).collect();
            majorana_state(&stars)
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::family;

    fn amp(psi: &PureState, idx: &[usize]) -> C64 {
        psi.amplitude(idx)
    }

    #[test]
    fn ghz_w_dicke() {
        let g = ghz(3, 2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amp(&g, &[0, 0, 0]) - r(s)).norm() < 1e-15 && (amp(&g, &[1, 1, 1]) - r(s)).norm() < 1e-15);
        let w3 = w(3).unwrap();
        assert_eq!(w3.support_size(), 3);
        assert!((amp(&w3, &[0, 1, 0]) - r(1.0 / 3f64.sqrt())).norm() < 1e-15);
        assert_eq!(dicke(4, 2).unwrap().support_size(), 6);
    }

    #[test]
    fn majorana_examples() {
        let w3 = majorana_state(&[(0.0, 0.0), (0.0, 0.0), (PI, 0.0)]).unwrap();
        assert!(w3.projectively_eq(&w(3).unwrap(), 1e-12));
        let north = majorana_state(&[(0.0, 0.0); 4]).unwrap();
        assert!((amp(&north, &[0, 0, 0, 0]) - ONE).norm() < 1e-12);
        // three stars evenly on the equator give GHZ
        let eq: Vec<Star> = (0..3).map(|k| (PI / 2.0, 2.0 * PI * k as f64 / 3.0)).collect();
        let g = majorana_state(&eq).unwrap();
        assert!(g.projectively_eq(&ghz(3, 2).unwrap(), 1e-12));
    }

    #[test]
    fn psi_family_small() {
        let p30 = psi_family(3, 0).unwrap();
        assert!(p30.approx_eq(&ghz(3, 2).unwrap(), 1e-15));
        // formula sign: minus on the Dicke part
        let p31 = psi_family(3, 1).unwrap();
        let k = 1.0 / 12f64.sqrt();
        assert!((amp(&p31, &[0, 0, 0]) - r(3.0 * k)).norm() < 1e-15);
        assert!((amp(&p31, &[0, 1, 1]) - r(-k)).norm() < 1e-15);
        // GHZ-type for every N with the relative sign -(-1)^N
        for n in 3..8 {
            let p = psi_family(n, 0).unwrap();
            let want = if n % 2 == 0 { -1.0 } else { 1.0 };
            assert_eq!(p.support_size(), 2);
            assert!((amp(&p, &vec![1; n]) / amp(&p, &vec![0; n]) - r(want)).norm() < 1e-12);
        }
    }

    #[test]
    fn excitation_examples() {
        let edge = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        assert_eq!(amp(&excitation_state(&edge).unwrap(), &[1, 1]), ONE);
        let k3 = family::complete(3, 2).unwrap();
        assert!(excitation_state(&k3).unwrap().approx_eq(&dicke(3, 2).unwrap(), 1e-15));
        let k12 = Hypergraph::graph(3, &[(0, 1), (0, 2)]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ex = excitation_state(&k12).unwrap();
        assert!((amp(&ex, &[1, 1, 0]) - r(s)).norm() < 1e-15 && (amp(&ex, &[1, 0, 1]) - r(s)).norm() < 1e-15);
        assert!(excitation_state(&Hypergraph::new(3, vec![]).unwrap()).is_err());
    }

    #[test]
    fn gabcd_examples() {
        let g = gabcd_state(ONE, ONE, ONE, ONE).unwrap();
        assert_eq!(g.support_size(), 4);
        for idx in [[0, 0, 0, 0], [1, 1, 1, 1], [0, 1, 0, 1], [1, 0, 1, 0]] {
            assert!((amp(&g, &idx) - r(0.5)).norm() < 1e-15);
        }
        // (1,0,0,0): only the first two pairs survive
        let g = gabcd_state(ONE, r(0.0), r(0.0), r(0.0)).unwrap();
        assert_eq!(g.support_size(), 4);
        for idx in [[0, 0, 0, 0], [1, 1, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0]] {
            assert!((amp(&g, &idx) - r(0.5)).norm() < 1e-15);
        }
        assert!(gabcd_state(r(0.0), r(0.0), r(0.0), r(0.0)).is_err());
    }

    #[test]
    fn ame5_support() {
        assert_eq!(ame5_minimal(5).unwrap().support_size(), 25);
        assert!(ame5_minimal(3).is_err());
        assert_eq!(ame5_nonminimal(2).unwrap().n_sites(), 5);
    }

    #[test]
    fn by_name_parses() {
        assert_eq!(by_name("ghz:3,2").unwrap(), ghz(3, 2).unwrap());
        assert!(by_name("nope").is_err());
        assert!(by_name("gabcd:1,2,3").is_err());
    }
}
