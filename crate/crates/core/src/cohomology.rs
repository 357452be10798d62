//! Elements of the graph cohomology ring: tuples of polynomials whose
//! differences along each edge are divisible by the edge label
//! `y - a_ij x`. Degree slices are kernels of `M_k`; module generators are
//! extracted greedily degree by degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{BivarPoly, EchelonBasis, Rat};
use crate::graph::{cartesian_product, EmbeddedGraph, Edge};
use crate::profile::{build_mk, char_profile, dim_hk, vanishing_index, CharProfile};

/// One polynomial per vertex. Serializes as an array of polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomElement {
    pub parts: Vec<BivarPoly>,
}

impl CohomElement {
    pub fn new(parts: Vec<BivarPoly>) -> Self {
        CohomElement { parts }
    }

    pub fn constant(m: usize, c: &Rat) -> Self {
        CohomElement::new(vec![BivarPoly::constant(c.clone()); m])
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, &Rat::one())
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BivarPoly::is_zero)
    }

    /// Whether every part is homogeneous of degree `k` (zero parts allowed).
    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.parts.iter().all(|p| p.is_homogeneous_of(k))
    }

    /// Componentwise product.
    pub fn mul(&self, other: &CohomElement) -> CohomElement {
        assert_eq!(self.len(), other.len(), "length mismatch");
        CohomElement::new(self.parts.iter().zip(&other.parts).map(|(a, b)| a * b).collect())
    }

    pub fn add(&self, other: &CohomElement) -> CohomElement {
        assert_eq!(self.len(), other.len(), "length mismatch");
        CohomElement::new(self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rat) -> CohomElement {
        CohomElement::new(self.parts.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiply every part by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> CohomElement {
        CohomElement::new(self.parts.iter().map(|p| p.shift(a, b)).collect())
    }

    /// `i`-th power by repeated componentwise multiplication.
    pub fn power(&self, i: u32) -> CohomElement {
        let mut acc = CohomElement::one(self.len());
        for _ in 0..i {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for CohomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, p) in self.parts.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of a membership test: the edges whose divisibility fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub failing_edges: Vec<Edge>,
}

impl Membership {
    pub fn holds(&self) -> bool {
        self.failing_edges.is_empty()
    }

    pub fn first_failure(&self) -> Option<Edge> {
        self.failing_edges.first().copied()
    }
}

/// Checks `(y - a_ij x) | f_i - f_j` on every edge, in edge order.
pub fn membership(g: &EmbeddedGraph, f: &[BivarPoly]) -> Membership {
    assert_eq!(f.len(), g.m(), "tuple length must equal vertex count");
    let failing_edges = g
        .edges()
        .iter()
        .zip(g.slopes())
        .filter(|(e, a)| !(&f[e.i - 1] - &f[e.j - 1]).divisible_by_linear(a))
        .map(|(e, _)| *e)
        .collect();
    Membership { failing_edges }
}

pub fn is_member(g: &EmbeddedGraph, f: &[BivarPoly]) -> bool {
    membership(g, f).holds()
}

fn require_member(g: &EmbeddedGraph, f: &CohomElement) -> Result<()> {
    match membership(g, &f.parts).first_failure() {
        Some(e) => Err(Error::NonMember(e.i, e.j)),
        None => Ok(()),
    }
}

/// Coefficient vector of a degree-`k` tuple: entry `n*m + (i-1)` is the
/// coefficient of `x^(k-n) y^n` in part `i`. Returns `None` if some part is
/// not homogeneous of degree `k`.
pub fn to_coeff_vector(f: &CohomElement, k: usize) -> Option<Vec<Rat>> {
    if !f.is_homogeneous_of(k as u32) {
        return None;
    }
    let m = f.len();
    let mut v = vec![Rat::zero(); (k + 1) * m];
    for (i, p) in f.parts.iter().enumerate() {
        for n in 0..=k {
            v[n * m + i] = p.coeff((k - n) as u32, n as u32);
        }
    }
    Some(v)
}

/// Inverse of [`to_coeff_vector`].
pub fn from_coeff_vector(v: &[Rat], m: usize, k: usize) -> CohomElement {
    assert_eq!(v.len(), (k + 1) * m, "coefficient vector length");
    let parts = (0..m)
        .map(|i| {
            let mut p = BivarPoly::zero();
            for n in 0..=k {
                p.add_term(((k - n) as u32, n as u32), &v[n * m + i]);
            }
            p
        })
        .collect();
    CohomElement::new(parts)
}

/// Coefficient vector of `x^a y^b` times a degree-`d` vector: the `y` power
/// of every entry moves up by `b`, landing in degree `d + a + b`.
fn shift_vector(v: &[Rat], m: usize, d: usize, a: usize, b: usize) -> Vec<Rat> {
    let k = d + a + b;
    let mut out = vec![Rat::zero(); (k + 1) * m];
    for n in 0..=d {
        for i in 0..m {
            out[(n + b) * m + i] = v[n * m + i].clone();
        }
    }
    out
}

/// Basis of the degree-`k` slice as coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBasis {
    pub k: usize,
    pub m: usize,
    pub vectors: Vec<Vec<Rat>>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn elements(&self) -> Vec<CohomElement> {
        self.vectors
            .iter()
            .map(|v| from_coeff_vector(v, self.m, self.k))
            .collect()
    }
}

/// Right kernel of `M_k`, one vector per free column of its reduced form.
pub fn degree_basis(g: &EmbeddedGraph, k: usize) -> DegreeBasis {
    let vectors = if g.num_edges() == 0 {
        let n = (k + 1) * g.m();
        (0..n)
            .map(|c| {
                let mut v = vec![Rat::zero(); n];
                v[c] = Rat::one();
                v
            })
            .collect()
    } else {
        build_mk(g, k).kernel()
    };
    DegreeBasis {
        k,
        m: g.m(),
        vectors,
    }
}

/// Homogeneous generators of the cohomology as a free module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub generators: Vec<(usize, CohomElement)>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|(d, _)| *d).collect()
    }

    /// `counts[d]` = number of generators of degree `d`.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.generators.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for (d, _) in &self.generators {
            counts[*d] += 1;
        }
        counts
    }
}

/// Span of all `x^a y^b * gamma` of total degree `k`.
fn multiples_span(m: usize, gens: &[(usize, Vec<Rat>)], k: usize) -> EchelonBasis {
    let mut span = EchelonBasis::new((k + 1) * m);
    for (d, v) in gens {
        if *d > k {
            continue;
        }
        for b in 0..=k - d {
            span.insert(&shift_vector(v, m, *d, k - d - b, b));
        }
    }
    span
}

/// Greedy generator extraction: at each degree, extend the span of the
/// multiples of earlier generators by kernel vectors in basis order.
pub fn module_generators(g: &EmbeddedGraph) -> Result<GeneratorSet> {
    let profile = char_profile(g)?;
    module_generators_with(g, &profile)
}

pub fn module_generators_with(g: &EmbeddedGraph, profile: &CharProfile) -> Result<GeneratorSet> {
    let m = g.m();
    let mut chosen: Vec<(usize, Vec<Rat>)> = Vec::new();
    let top = vanishing_index(g) + 1;
    for k in 0..=top {
        if chosen.len() == m {
            break;
        }
        let mut span = multiples_span(m, &chosen, k);
        let mut found = 0;
        for v in degree_basis(g, k).vectors {
            if span.insert(&v) {
                chosen.push((k, v));
                found += 1;
            }
        }
        let expected = profile.c_at(k);
        if found != expected {
            return Err(Error::CountMismatch {
                degree: k,
                expected,
                found,
            });
        }
    }
    if chosen.len() != m {
        return Err(Error::CountMismatch {
            degree: top + 1,
            expected: m,
            found: chosen.len(),
        });
    }
    Ok(GeneratorSet {
        generators: chosen
            .into_iter()
            .map(|(d, v)| (d, from_coeff_vector(&v, m, d)))
            .collect(),
    })
}

/// `omega = (p_i x + q_i y)_i`, checked for membership.
pub fn symplectic_form(g: &EmbeddedGraph) -> Result<CohomElement> {
    let phi = g.phi().ok_or(Error::NoCoordinates)?;
    let omega = CohomElement::new(phi.iter().map(|pt| BivarPoly::linear(&pt.p, &pt.q)).collect());
    require_member(g, &omega)?;
    Ok(omega)
}

pub fn power(omega: &CohomElement, i: u32) -> CohomElement {
    omega.power(i)
}

/// Why a candidate set failed to be a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BasisDefect {
    WrongLength { index: usize },
    NotHomogeneous { index: usize },
    NotMember { index: usize, edge: Edge },
    WrongCount { found: usize, m: usize },
    /// At degree `k` the multiples span `spanned` dimensions; free generation
    /// needs `expected`, and the slice itself has dimension `dim`.
    Span { k: usize, spanned: usize, expected: usize, dim: usize },
}

/// Checks that the candidates freely generate the cohomology, comparing the
/// span of their multiples against the Hilbert function in every degree up to
/// `max candidate degree + K` (at least `K + 1`).
pub fn basis_defect(g: &EmbeddedGraph, candidate: &GeneratorSet) -> Option<BasisDefect> {
    let m = g.m();
    let mut vecs = Vec::with_capacity(candidate.len());
    for (index, (d, f)) in candidate.generators.iter().enumerate() {
        if f.len() != m {
            return Some(BasisDefect::WrongLength { index });
        }
        let Some(v) = to_coeff_vector(f, *d) else {
            return Some(BasisDefect::NotHomogeneous { index });
        };
        if let Some(edge) = membership(g, &f.parts).first_failure() {
            return Some(BasisDefect::NotMember { index, edge });
        }
        vecs.push((*d, v));
    }
    if vecs.len() != m {
        return Some(BasisDefect::WrongCount {
            found: vecs.len(),
            m,
        });
    }
    let kk = vanishing_index(g);
    let top_deg = vecs.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let limit = (top_deg + kk).max(kk + 1);
    for k in 0..=limit {
        let spanned = multiples_span(m, &vecs, k).rank();
        let expected: usize = vecs
            .iter()
            .filter(|(d, _)| *d <= k)
            .map(|(d, _)| k + 1 - d)
            .sum();
        let dim = dim_hk(g, k);
        if spanned != expected || spanned != dim {
            return Some(BasisDefect::Span {
                k,
                spanned,
                expected,
                dim,
            });
        }
    }
    None
}

pub fn verify_basis(g: &EmbeddedGraph, candidate: &GeneratorSet) -> bool {
    basis_defect(g, candidate).is_none()
}

/// The powers `omega^0, ..., omega^(m-1)` as a candidate set.
pub fn omega_powers(g: &EmbeddedGraph) -> Result<GeneratorSet> {
    let omega = symplectic_form(g)?;
    Ok(GeneratorSet {
        generators: (0..g.m()).map(|i| (i, omega.power(i as u32))).collect(),
    })
}

/// `u (x) v -> (u_1 v_1, u_1 v_2, ..., u_m v_n)`, matching the vertex order of
/// [`cartesian_product`].
pub fn kunneth_map(u: &CohomElement, v: &CohomElement) -> CohomElement {
    let parts = u
        .parts
        .iter()
        .flat_map(|f| v.parts.iter().map(move |g| f * g))
        .collect();
    CohomElement::new(parts)
}

/// Like [`kunneth_map`], but builds the product graph and checks that the
/// image is a member.
pub fn kunneth_map_checked(
    g1: &EmbeddedGraph,
    g2: &EmbeddedGraph,
    a: &Rat,
    b: &Rat,
    u: &CohomElement,
    v: &CohomElement,
) -> Result<CohomElement> {
    let product = cartesian_product(g1, g2, a, b)?;
    let w = kunneth_map(u, v);
    require_member(&product, &w)?;
    Ok(w)
}

/// `(c * d)_k = sum_i c_i d_(k-i)`.
pub fn convolve(c: &[usize], d: &[usize]) -> Vec<usize> {
    if c.is_empty() || d.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; c.len() + d.len() - 1];
    for (i, x) in c.iter().enumerate() {
        for (j, y) in d.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub c_product: Vec<usize>,
    pub convolution: Vec<usize>,
    pub convolution_holds: bool,
    /// Images of generator pairs that were checked for membership.
    pub samples: usize,
    /// First generator pair `(index in G1, index in G2)` whose image is not a
    /// member, if any.
    pub non_member: Option<(usize, usize)>,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.convolution_holds && self.non_member.is_none()
    }
}

/// Compares the profile of the product with the convolution of the factor
/// profiles, and maps every pair of factor generators into the product.
pub fn kunneth_check(g1: &EmbeddedGraph, g2: &EmbeddedGraph, a: &Rat, b: &Rat) -> Result<KunnethReport> {
    let product = cartesian_product(g1, g2, a, b)?;
    let p1 = char_profile(g1)?;
    let p2 = char_profile(g2)?;
    let p3 = char_profile(&product)?;
    let convolution = convolve(&p1.c, &p2.c);
    let gens1 = module_generators_with(g1, &p1)?;
    let gens2 = module_generators_with(g2, &p2)?;
    let mut non_member = None;
    let mut samples = 0;
    'outer: for (x, (_, u)) in gens1.generators.iter().enumerate() {
        for (y, (_, v)) in gens2.generators.iter().enumerate() {
            samples += 1;
            if !is_member(&product, &kunneth_map(u, v).parts) {
                non_member = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(KunnethReport {
        convolution_holds: convolution == p3.c,
        c1: p1.c,
        c2: p2.c,
        c_product: p3.c,
        convolution,
        samples,
        non_member,
    })
}
