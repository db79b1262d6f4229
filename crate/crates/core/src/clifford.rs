//! The Dirac algebra cl(1,3) as explicit 4×4 complex matrices.
//!
//! Signature is η = diag(-1, +1, +1, +1). The generators are
//!
//! ```text
//! γ₀ = [[-i·I₂, 0], [0, i·I₂]],   γₖ = [[0, i·σᵏ], [-i·σᵏ, 0]]
//! ```
//!
//! with the standard Pauli matrices, σ_ab = (γ_aγ_b − γ_bγ_a)/4 and
//! γ₅ = γ₀γ₁γ₂γ₃. Entries are [`ScalarExpr`] so the same type carries both
//! the constant generators and position- or parameter-dependent elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use std::sync::LazyLock;

use crate::expr::{Cx, ScalarExpr};
use crate::linalg;

/// Minkowski metric component η_ab (equal to η^ab).
pub fn eta(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 0) => -1,
        (a, b) if a == b => 1,
        _ => 0,
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clifford {
    m: [[ScalarExpr; 4]; 4],
}

impl fmt::Debug for Clifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

impl Default for Clifford {
    fn default() -> Self {
        Clifford::zero()
    }
}

impl Clifford {
    pub fn zero() -> Self {
        Clifford { m: Default::default() }
    }

    pub fn identity() -> Self {
        Clifford::scalar(ScalarExpr::one())
    }

    /// `s·I`.
    pub fn scalar(s: ScalarExpr) -> Self {
        let mut m: [[ScalarExpr; 4]; 4] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = s.clone();
        }
        Clifford { m }
    }

    pub fn from_entries(m: [[ScalarExpr; 4]; 4]) -> Self {
        Clifford { m }
    }

    pub fn from_cx(m: [[Cx; 4]; 4]) -> Self {
        Clifford { m: m.map(|r| r.map(ScalarExpr::constant)) }
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.m[i][j]
    }

    pub fn entries(&self) -> &[[ScalarExpr; 4]; 4] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(ScalarExpr::is_zero)
    }

    pub fn map(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        Clifford { m: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.m[i][j]))) }
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        if s.is_zero() {
            return Clifford::zero();
        }
        self.map(|e| e * s)
    }

    pub fn scale_cx(&self, c: &Cx) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn trace(&self) -> ScalarExpr {
        (0..4).fold(ScalarExpr::zero(), |acc, i| &acc + &self.m[i][i])
    }

    /// Hermitian conjugate (entry-wise complex conjugate, transposed).
    pub fn dagger(&self) -> Self {
        Clifford { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].conj())) }
    }

    /// The Dirac conjugation map `G ↦ γ₀ G† γ₀`.
    pub fn dirac_conjugate(&self) -> Self {
        let g0 = gamma(0);
        &(&g0 * &self.dagger()) * &g0
    }

    pub fn commutator(&self, other: &Clifford) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Clifford) -> Self {
        &(self * other) + &(other * self)
    }

    /// Matrix acting on a column.
    pub fn apply(&self, v: &[ScalarExpr; 4]) -> [ScalarExpr; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(ScalarExpr::zero(), |acc, k| {
                if self.m[i][k].is_zero() || v[k].is_zero() {
                    acc
                } else {
                    &acc + &(&self.m[i][k] * &v[k])
                }
            })
        })
    }

    /// Row acted on from the right: `v·M`.
    pub fn apply_row(&self, v: &[ScalarExpr; 4]) -> [ScalarExpr; 4] {
        std::array::from_fn(|j| {
            (0..4).fold(ScalarExpr::zero(), |acc, k| {
                if self.m[k][j].is_zero() || v[k].is_zero() {
                    acc
                } else {
                    &acc + &(&v[k] * &self.m[k][j])
                }
            })
        })
    }
}

impl Add for &Clifford {
    type Output = Clifford;
    fn add(self, rhs: &Clifford) -> Clifford {
        Clifford { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &rhs.m[i][j])) }
    }
}

impl Sub for &Clifford {
    type Output = Clifford;
    fn sub(self, rhs: &Clifford) -> Clifford {
        Clifford { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] - &rhs.m[i][j])) }
    }
}

impl Neg for &Clifford {
    type Output = Clifford;
    fn neg(self) -> Clifford {
        self.map(|e| -e)
    }
}

impl Mul for &Clifford {
    type Output = Clifford;
    fn mul(self, rhs: &Clifford) -> Clifford {
        let mut m: [[ScalarExpr; 4]; 4] = Default::default();
        for i in 0..4 {
            for k in 0..4 {
                let a = &self.m[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..4 {
                    let b = &rhs.m[k][j];
                    if !b.is_zero() {
                        m[i][j] = &m[i][j] + &(a * b);
                    }
                }
            }
        }
        Clifford { m }
    }
}

impl Add for Clifford {
    type Output = Clifford;
    fn add(self, rhs: Clifford) -> Clifford {
        &self + &rhs
    }
}

impl Sub for Clifford {
    type Output = Clifford;
    fn sub(self, rhs: Clifford) -> Clifford {
        &self - &rhs
    }
}

impl Mul for Clifford {
    type Output = Clifford;
    fn mul(self, rhs: Clifford) -> Clifford {
        &self * &rhs
    }
}

fn c(re: i64, im: i64) -> Cx {
    &Cx::from_int(re) + &(&Cx::i() * &Cx::from_int(im))
}

fn pauli(k: usize) -> [[Cx; 2]; 2] {
    match k {
        1 => [[c(0, 0), c(1, 0)], [c(1, 0), c(0, 0)]],
        2 => [[c(0, 0), c(0, -1)], [c(0, 1), c(0, 0)]],
        3 => [[c(1, 0), c(0, 0)], [c(0, 0), c(-1, 0)]],
        _ => unreachable!(),
    }
}

static GAMMAS: LazyLock<[Clifford; 4]> = LazyLock::new(|| {
    std::array::from_fn(|a| {
        let mut m: [[Cx; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Cx::zero()));
        if a == 0 {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = if i < 2 { c(0, -1) } else { c(0, 1) };
            }
        } else {
            let s = pauli(a);
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j + 2] = &Cx::i() * &s[i][j];
                    m[i + 2][j] = &(-&Cx::i()) * &s[i][j];
                }
            }
        }
        Clifford::from_cx(m)
    })
});

/// Generator γ_a.
pub fn gamma(a: usize) -> Clifford {
    GAMMAS[a].clone()
}

/// σ_ab = (γ_aγ_b − γ_bγ_a)/4.
pub fn sigma(a: usize, b: usize) -> Clifford {
    gamma(a).commutator(&gamma(b)).scale_cx(&Cx::from_ratio(1, 4))
}

/// γ₅ = γ₀γ₁γ₂γ₃.
pub fn gamma5() -> Clifford {
    &(&(&gamma(0) * &gamma(1)) * &gamma(2)) * &gamma(3)
}

/// One of the 16 basis elements {I, γ_a, σ_ab (a<b), γ_aγ₅, γ₅}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Identity,
    Vector(u8),
    Bivector(u8, u8),
    Axial(u8),
    Pseudoscalar,
}

impl BasisElement {
    pub const ALL: [BasisElement; 16] = [
        BasisElement::Identity,
        BasisElement::Vector(0),
        BasisElement::Vector(1),
        BasisElement::Vector(2),
        BasisElement::Vector(3),
        BasisElement::Bivector(0, 1),
        BasisElement::Bivector(0, 2),
        BasisElement::Bivector(0, 3),
        BasisElement::Bivector(1, 2),
        BasisElement::Bivector(1, 3),
        BasisElement::Bivector(2, 3),
        BasisElement::Axial(0),
        BasisElement::Axial(1),
        BasisElement::Axial(2),
        BasisElement::Axial(3),
        BasisElement::Pseudoscalar,
    ];

    pub fn index(self) -> usize {
        BasisElement::ALL.iter().position(|b| *b == self).expect("canonical basis element")
    }

    pub fn matrix(self) -> Clifford {
        BASIS[self.index()].clone()
    }

    pub fn label(self) -> String {
        match self {
            BasisElement::Identity => "I".into(),
            BasisElement::Vector(a) => format!("γ{a}"),
            BasisElement::Bivector(a, b) => format!("σ{a}{b}"),
            BasisElement::Axial(a) => format!("γ{a}γ5"),
            BasisElement::Pseudoscalar => "γ5".into(),
        }
    }
}

static BASIS: LazyLock<Vec<Clifford>> = LazyLock::new(|| {
    BasisElement::ALL
        .iter()
        .map(|b| match *b {
            BasisElement::Identity => Clifford::identity(),
            BasisElement::Vector(a) => gamma(a as usize),
            BasisElement::Bivector(a, b) => sigma(a as usize, b as usize),
            BasisElement::Axial(a) => &gamma(a as usize) * &gamma5(),
            BasisElement::Pseudoscalar => gamma5(),
        })
        .collect()
});

/// Inverse of the Gram matrix tr(B_i B_j), computed once.
static GRAM_INVERSE: LazyLock<Vec<Vec<Cx>>> = LazyLock::new(|| {
    let gram: Vec<Vec<Cx>> = BASIS
        .iter()
        .map(|bi| BASIS.iter().map(|bj| (bi * bj).trace().as_constant().expect("constant basis")).collect())
        .collect();
    linalg::invert(&gram).expect("cl(1,3) basis is linearly independent")
});

/// Coefficients of an element in the 16-element basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisCoefficients {
    coeffs: Vec<ScalarExpr>,
}

impl BasisCoefficients {
    pub fn get(&self, b: BasisElement) -> &ScalarExpr {
        &self.coeffs[b.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisElement, &ScalarExpr)> {
        BasisElement::ALL.iter().copied().zip(self.coeffs.iter())
    }

    pub fn reconstruct(&self) -> Clifford {
        self.iter().filter(|(_, c)| !c.is_zero()).fold(Clifford::zero(), |acc, (b, c)| &acc + &b.matrix().scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ScalarExpr::is_zero)
    }
}

/// Unique basis coefficients of `g`, obtained through the trace pairing.
pub fn basis_decompose(g: &Clifford) -> BasisCoefficients {
    let traces: Vec<ScalarExpr> = BASIS.iter().map(|b| (b * g).trace()).collect();
    let coeffs = GRAM_INVERSE
        .iter()
        .map(|row| {
            row.iter()
                .zip(&traces)
                .filter(|(w, t)| !w.is_zero() && !t.is_zero())
                .fold(ScalarExpr::zero(), |acc, (w, t)| &acc + &t.scale(w))
        })
        .collect();
    BasisCoefficients { coeffs }
}

/// Outcome of one family of algebra identities.
#[derive(Clone, Debug)]
pub struct AlgebraCheck {
    pub label: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl AlgebraCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub checks: Vec<AlgebraCheck>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AlgebraCheck::passed)
    }
}

struct Family {
    label: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Family {
    fn new(label: &'static str) -> Self {
        Family { label, cases: 0, failures: Vec::new() }
    }

    fn expect(&mut self, lhs: Clifford, rhs: Clifford, case: impl FnOnce() -> String) {
        self.cases += 1;
        if lhs != rhs {
            self.failures.push(case());
        }
    }

    fn done(self) -> AlgebraCheck {
        AlgebraCheck { label: self.label, cases: self.cases, failures: self.failures }
    }
}

fn g(a: usize) -> Clifford {
    gamma(a)
}

fn g5() -> Clifford {
    gamma5()
}

fn ax(a: usize) -> Clifford {
    &gamma(a) * &gamma5()
}

fn sc(n: i64, m: &Clifford) -> Clifford {
    m.scale_cx(&Cx::from_int(n))
}

/// Anticommutation of the generators, the Dirac-conjugation relations on
/// every basis element, and the eleven commutator families, all by exact
/// matrix arithmetic.
pub fn verify_commutator_table() -> AlgebraReport {
    let id = Clifford::identity();
    let mut checks = Vec::new();

    let mut f = Family::new("anticommutator {γa,γb} = 2η_ab I");
    for a in 0..4 {
        for b in a..4 {
            f.expect(g(a).anticommutator(&g(b)), sc(2 * eta(a, b), &id), || format!("a={a} b={b}"));
        }
    }
    checks.push(f.done());

    let mut f = Family::new("dirac conjugation γ0 G† γ0");
    f.expect(id.dirac_conjugate(), -&id, || "I".into());
    for a in 0..4 {
        f.expect(g(a).dirac_conjugate(), g(a), || format!("γ{a}"));
        f.expect(ax(a).dirac_conjugate(), -&ax(a), || format!("γ{a}γ5"));
        for b in 0..4 {
            f.expect(sigma(a, b).dirac_conjugate(), sigma(a, b), || format!("σ{a}{b}"));
        }
    }
    f.expect(g5().dirac_conjugate(), -&g5(), || "γ5".into());
    checks.push(f.done());

    let mut f = Family::new("(a) [I, B] = 0");
    for b in BasisElement::ALL {
        f.expect(id.commutator(&b.matrix()), Clifford::zero(), || b.label());
    }
    checks.push(f.done());

    let mut f = Family::new("(b) [γa, γb] = 4σ_ab");
    for a in 0..4 {
        for b in 0..4 {
            f.expect(g(a).commutator(&g(b)), sc(4, &sigma(a, b)), || format!("a={a} b={b}"));
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(c) [γa, σbc] = η_ab γc − η_ac γb");
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let rhs = &sc(eta(a, b), &g(c)) - &sc(eta(a, c), &g(b));
                f.expect(g(a).commutator(&sigma(b, c)), rhs, || format!("a={a} b={b} c={c}"));
            }
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(d) [γa, γbγ5] = 2η_ab γ5");
    for a in 0..4 {
        for b in 0..4 {
            f.expect(g(a).commutator(&ax(b)), sc(2 * eta(a, b), &g5()), || format!("a={a} b={b}"));
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(e) [γa, γ5] = 2γaγ5");
    for a in 0..4 {
        f.expect(g(a).commutator(&g5()), sc(2, &ax(a)), || format!("a={a}"));
    }
    checks.push(f.done());

    let mut f = Family::new("(f) [σab, σcd] = −η_ac σbd − η_bd σac + η_bc σad + η_ad σbc");
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let rhs = [
                        sc(-eta(a, c), &sigma(b, d)),
                        sc(-eta(b, d), &sigma(a, c)),
                        sc(eta(b, c), &sigma(a, d)),
                        sc(eta(a, d), &sigma(b, c)),
                    ]
                    .iter()
                    .fold(Clifford::zero(), |acc, m| &acc + m);
                    f.expect(sigma(a, b).commutator(&sigma(c, d)), rhs, || format!("a={a} b={b} c={c} d={d}"));
                }
            }
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(g) [σab, γcγ5] = −η_ac γbγ5 + η_bc γaγ5");
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let rhs = &sc(-eta(a, c), &ax(b)) + &sc(eta(b, c), &ax(a));
                f.expect(sigma(a, b).commutator(&ax(c)), rhs, || format!("a={a} b={b} c={c}"));
            }
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(h) [σab, γ5] = 0");
    for a in 0..4 {
        for b in 0..4 {
            f.expect(sigma(a, b).commutator(&g5()), Clifford::zero(), || format!("a={a} b={b}"));
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(i) [γaγ5, γbγ5] = 4σab");
    for a in 0..4 {
        for b in 0..4 {
            f.expect(ax(a).commutator(&ax(b)), sc(4, &sigma(a, b)), || format!("a={a} b={b}"));
        }
    }
    checks.push(f.done());

    let mut f = Family::new("(j) [γaγ5, γ5] = −2γa");
    for a in 0..4 {
        f.expect(ax(a).commutator(&g5()), sc(-2, &g(a)), || format!("a={a}"));
    }
    checks.push(f.done());

    let mut f = Family::new("(k) [γ5, γ5] = 0");
    f.expect(g5().commutator(&g5()), Clifford::zero(), String::new);
    checks.push(f.done());

    AlgebraReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_squares_follow_signature() {
        assert_eq!(&g(0) * &g(0), -&Clifford::identity());
        for k in 1..4 {
            assert_eq!(&g(k) * &g(k), Clifford::identity());
        }
        assert_eq!(g(0).entry(0, 0).as_constant().unwrap(), -&Cx::i());
    }

    #[test]
    fn sigma_is_antisymmetric() {
        for a in 0..4 {
            assert!(sigma(a, a).is_zero());
            for b in 0..4 {
                assert!((&sigma(a, b) + &sigma(b, a)).is_zero());
            }
        }
        assert_eq!(sc(4, &sigma(0, 1)), g(0).commutator(&g(1)));
    }

    #[test]
    fn gamma5_commutes_with_bivectors() {
        for a in 0..4 {
            for b in 0..4 {
                assert!(sigma(a, b).commutator(&g5()).is_zero());
            }
            assert_eq!(g(a).commutator(&g5()), sc(2, &(&g(a) * &g5())));
        }
    }

    #[test]
    fn conjugation_on_basis() {
        assert_eq!(Clifford::identity().dirac_conjugate(), -&Clifford::identity());
        for a in 0..4 {
            assert_eq!(g(a).dirac_conjugate(), g(a));
        }
        assert_eq!(g5().dirac_conjugate(), -&g5());
    }

    #[test]
    fn decomposition_of_basis_elements() {
        assert!(basis_decompose(&Clifford::zero()).is_zero());
        let d = basis_decompose(&g(2));
        for (b, c) in d.iter() {
            let want = if b == BasisElement::Vector(2) { ScalarExpr::one() } else { ScalarExpr::zero() };
            assert_eq!(*c, want, "{}", b.label());
        }
        for b in BasisElement::ALL {
            assert_eq!(basis_decompose(&b.matrix()).reconstruct(), b.matrix());
        }
    }

    #[test]
    fn decomposition_with_symbolic_entries() {
        let k = ScalarExpr::real_param("k");
        let m = &g(1).scale(&k) + &sigma(2, 3).scale(&ScalarExpr::coord(0));
        let d = basis_decompose(&m);
        assert_eq!(*d.get(BasisElement::Vector(1)), k);
        assert_eq!(*d.get(BasisElement::Bivector(2, 3)), ScalarExpr::coord(0));
        assert_eq!(d.reconstruct(), m);
    }

    #[test]
    fn full_table_passes() {
        let r = verify_commutator_table();
        for c in &r.checks {
            assert!(c.passed(), "{}: {:?}", c.label, c.failures);
        }
        assert_eq!(r.checks.len(), 13);
    }
}
