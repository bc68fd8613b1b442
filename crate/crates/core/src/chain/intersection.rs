use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::chain::cochain::{cap_product, cup_product, Chain, Cochain};
use crate::chain::complex::{
    validate_complex, ChainComplexZ, OrientationCharacter, SimplicialComplex,
};
use crate::chain::homology::{cohomology_basis, homology_basis, GradedBasis, GroupSummary};
use crate::error::{Error, Result};
use crate::snf::{solve_integer_system, IntMatrix};

/// A class in regraded homology `ℍ_d = H_{d+n}`, `-n <= d <= 0`, given by
/// coordinates in the canonical basis of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedClass {
    pub degree: i64,
    pub coords: Vec<i64>,
}

impl GradedClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Outcome of looking for a fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FundamentalClass {
    /// All top simplices with compatible signs; generates `H_n(K; Z_w) ≅ Z`.
    Cycle { chain: Vec<i64>, class: GradedClass },
    /// No compatible sign system exists, so `H_n(K; Z_w)` is the group
    /// reported here and has no free generator.
    Vanishing { top: GroupSummary },
}

/// Checks that `k` is a closed, strongly connected pseudomanifold and
/// solves for signs making the sum of top simplices a twisted cycle.
/// Returns `None` when the sign system is inconsistent.
fn compatible_signs(k: &SimplicialComplex, w: &OrientationCharacter) -> Result<Option<Vec<i64>>> {
    let n = k
        .dim()
        .ok_or_else(|| Error::NotManifold("empty complex".into()))?;
    if n == 0 {
        if k.count(0) != 1 {
            return Err(Error::NotManifold(
                "a closed 0-manifold here must be one point".into(),
            ));
        }
        return Ok(Some(vec![1]));
    }
    for d in 0..n {
        let mut covered = vec![false; k.count(d)];
        for idx in 0..k.count(d + 1) {
            for i in 0..=d + 1 {
                covered[k.face_index(d + 1, idx, i)] = true;
            }
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::NotManifold(format!(
                "simplex {:?} is not a face of a top simplex",
                k.simplex(d, i)
            )));
        }
    }
    let ridges = k.cofaces_of_ridges();
    if let Some((r, c)) = ridges.iter().enumerate().find(|(_, c)| c.len() != 2) {
        return Err(Error::NotManifold(format!(
            "ridge {:?} has {} cofaces",
            k.simplex(n - 1, r),
            c.len()
        )));
    }
    // Coefficient of ridge i of top t in ∂t is ε(t, i)(-1)^i; the two
    // contributions to every ridge must cancel.
    let incidence = |t: usize, i: usize| w.sign(n, t, i) * if i % 2 == 0 { 1 } else { -1 };
    let mut sign = vec![0i64; k.count(n)];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    let mut consistent = true;
    while let Some(t) = queue.pop_front() {
        for i in 0..=n {
            let r = k.face_index(n, t, i);
            for &(t2, i2) in &ridges[r] {
                if t2 == t && i2 == i {
                    continue;
                }
                let want = -sign[t] * incidence(t, i) * incidence(t2, i2);
                if sign[t2] == 0 {
                    sign[t2] = want;
                    queue.push_back(t2);
                } else if sign[t2] != want {
                    consistent = false;
                }
            }
        }
    }
    if sign.contains(&0) {
        return Err(Error::NotManifold(
            "top simplices are not connected through ridges".into(),
        ));
    }
    Ok(consistent.then_some(sign))
}

pub fn fundamental_class(
    k: &SimplicialComplex,
    w: &OrientationCharacter,
) -> Result<FundamentalClass> {
    let chains = validate_complex(k, w)?;
    let n = chains.top();
    let basis = homology_basis(&chains);
    match compatible_signs(k, w)? {
        Some(chain) => {
            let coords = basis.degree(n).coordinates(&chain)?;
            Ok(FundamentalClass::Cycle {
                chain,
                class: GradedClass { degree: 0, coords },
            })
        }
        None => Ok(FundamentalClass::Vanishing {
            top: basis.degree(n).summary(),
        }),
    }
}

/// A closed pseudomanifold with its orientation character and chosen
/// fundamental cycle.
#[derive(Clone, Debug)]
pub struct ClosedManifold {
    complex: SimplicialComplex,
    character: OrientationCharacter,
    twisted: ChainComplexZ,
    untwisted: ChainComplexZ,
    fundamental: Vec<i64>,
}

impl ClosedManifold {
    pub fn new(complex: SimplicialComplex, character: OrientationCharacter) -> Result<Self> {
        let twisted = validate_complex(&complex, &character)?;
        let untwisted = validate_complex(&complex, &OrientationCharacter::trivial(&complex))?;
        let fundamental = compatible_signs(&complex, &character)?.ok_or_else(|| {
            Error::NotManifold(
                "no compatible sign system: the character is not the orientation character".into(),
            )
        })?;
        Ok(ClosedManifold {
            complex,
            character,
            twisted,
            untwisted,
            fundamental,
        })
    }

    /// Uses the orientation character read off from local orientations.
    pub fn from_complex(complex: SimplicialComplex) -> Result<Self> {
        let w = OrientationCharacter::from_local_orientations(&complex)?;
        Self::new(complex, w)
    }

    /// The same manifold with the opposite fundamental cycle.
    pub fn reversed(mut self) -> Self {
        for c in &mut self.fundamental {
            *c = -*c;
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.twisted.top()
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn character(&self) -> &OrientationCharacter {
        &self.character
    }

    pub fn twisted_chains(&self) -> &ChainComplexZ {
        &self.twisted
    }

    pub fn untwisted_chains(&self) -> &ChainComplexZ {
        &self.untwisted
    }

    pub fn fundamental_chain(&self) -> &[i64] {
        &self.fundamental
    }

    /// Whether the top simplices admit signs making a cycle with integer
    /// coefficients.
    pub fn is_orientable(&self) -> bool {
        let trivial = OrientationCharacter::trivial(&self.complex);
        matches!(compatible_signs(&self.complex, &trivial), Ok(Some(_)))
    }
}

/// Whether the factor `(-1)^{n(n-q)}` is applied. Disabling it exists only
/// to show that the ring laws depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoldSign {
    Enabled,
    Disabled,
}

/// The regraded ring `ℍ_*(M; Z_or)` computed through cup product and
/// capping with the fundamental cycle.
#[derive(Clone, Debug)]
pub struct IntersectionRing {
    manifold: ClosedManifold,
    homology: GradedBasis,
    cohomology: GradedBasis,
    /// `duality[k]`: coordinates of `[M] ⌢ (generator of H^k)` in `H_{n-k}`.
    duality: Vec<IntMatrix>,
    dold: DoldSign,
}

impl IntersectionRing {
    pub fn new(manifold: ClosedManifold) -> Result<Self> {
        Self::with_dold_sign(manifold, DoldSign::Enabled)
    }

    pub fn with_dold_sign(manifold: ClosedManifold, dold: DoldSign) -> Result<Self> {
        let homology = homology_basis(&manifold.twisted);
        let cohomology = cohomology_basis(&manifold.untwisted);
        let n = manifold.dim();
        let mut duality = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let target = homology.degree(n - k);
            let source = cohomology.degree(k);
            let mut m = IntMatrix::zeros(target.rank(), source.rank());
            for j in 0..source.rank() {
                let a = Cochain {
                    degree: k,
                    values: source.generator(j).to_vec(),
                    twisted: false,
                };
                let c = cap_product(
                    &manifold.complex,
                    &manifold.character,
                    &manifold.fundamental_cycle(),
                    &a,
                )?;
                let coords = target.coordinates(&c.coeffs)?;
                for (i, x) in coords.into_iter().enumerate() {
                    m[(i, j)] = x;
                }
            }
            duality.push(m);
        }
        Ok(IntersectionRing {
            manifold,
            homology,
            cohomology,
            duality,
            dold,
        })
    }

    pub fn manifold(&self) -> &ClosedManifold {
        &self.manifold
    }

    pub fn dim(&self) -> usize {
        self.manifold.dim()
    }

    pub fn homology(&self) -> &GradedBasis {
        &self.homology
    }

    pub fn cohomology(&self) -> &GradedBasis {
        &self.cohomology
    }

    fn unregraded(&self, degree: i64) -> Result<usize> {
        let n = self.dim() as i64;
        if degree > 0 || degree < -n {
            return Err(Error::Degree(format!(
                "regraded degree {degree} outside [-{n}, 0]"
            )));
        }
        Ok((degree + n) as usize)
    }

    pub fn group(&self, degree: i64) -> Result<GroupSummary> {
        Ok(self.homology.degree(self.unregraded(degree)?).summary())
    }

    pub fn zero(&self, degree: i64) -> Result<GradedClass> {
        let k = self.unregraded(degree)?;
        Ok(GradedClass {
            degree,
            coords: vec![0; self.homology.degree(k).rank()],
        })
    }

    /// The canonical generators of `ℍ_degree`.
    pub fn basis(&self, degree: i64) -> Result<Vec<GradedClass>> {
        let zero = self.zero(degree)?;
        Ok((0..zero.coords.len())
            .map(|i| {
                let mut c = zero.clone();
                c.coords[i] = 1;
                c
            })
            .collect())
    }

    pub fn unit(&self) -> GradedClass {
        self.class_of_cycle(0, &self.manifold.fundamental)
            .expect("fundamental chain is a cycle")
    }

    pub fn class_of_cycle(&self, degree: i64, chain: &[i64]) -> Result<GradedClass> {
        let k = self.unregraded(degree)?;
        Ok(GradedClass {
            degree,
            coords: self.homology.degree(k).coordinates(chain)?,
        })
    }

    pub fn representative(&self, x: &GradedClass) -> Result<Vec<i64>> {
        let k = self.unregraded(x.degree)?;
        Ok(self.homology.degree(k).representative(&x.coords))
    }

    fn check(&self, x: &GradedClass) -> Result<usize> {
        let k = self.unregraded(x.degree)?;
        if x.coords.len() != self.homology.degree(k).rank() {
            return Err(Error::Structure(format!(
                "class of degree {} has {} coordinates, expected {}",
                x.degree,
                x.coords.len(),
                self.homology.degree(k).rank()
            )));
        }
        Ok(k)
    }

    pub fn add(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        let k = self.check(x)?;
        if x.degree != y.degree {
            return Err(Error::Degree("adding classes of different degrees".into()));
        }
        let mut coords: Vec<i64> = x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect();
        self.homology.degree(k).normalize(&mut coords);
        Ok(GradedClass {
            degree: x.degree,
            coords,
        })
    }

    pub fn scale(&self, c: i64, x: &GradedClass) -> Result<GradedClass> {
        let k = self.check(x)?;
        let mut coords: Vec<i64> = x.coords.iter().map(|a| c * a).collect();
        self.homology.degree(k).normalize(&mut coords);
        Ok(GradedClass {
            degree: x.degree,
            coords,
        })
    }

    /// A cocycle whose cap with the fundamental cycle represents `x`.
    pub fn dual_cocycle(&self, x: &GradedClass) -> Result<Cochain> {
        let p = self.check(x)?;
        let n = self.dim();
        let k = n - p;
        let target = self.homology.degree(p);
        let pd = &self.duality[k];
        // Solve pd · a ≡ x modulo the torsion orders of the target.
        let torsion: Vec<(usize, u64)> = target
            .orders()
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, d)| d != 0)
            .collect();
        let mut sys = IntMatrix::zeros(pd.rows(), pd.cols() + torsion.len());
        for i in 0..pd.rows() {
            for j in 0..pd.cols() {
                sys[(i, j)] = pd[(i, j)];
            }
        }
        for (t, &(i, d)) in torsion.iter().enumerate() {
            sys[(i, pd.cols() + t)] = d as i64;
        }
        let sol = solve_integer_system(&sys, &x.coords).ok_or_else(|| {
            Error::NotManifold("cap product with the fundamental cycle is not onto".into())
        })?;
        let source = self.cohomology.degree(k);
        let mut a = sol[..pd.cols()].to_vec();
        source.normalize(&mut a);
        Ok(Cochain {
            degree: k,
            values: source.representative(&a),
            twisted: false,
        })
    }

    /// `x · y = ± [M] ⌢ (D⁻¹x ∪ D⁻¹y)`, signed so that the fundamental class
    /// is a two-sided unit.
    pub fn product(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        let p = self.check(x)?;
        let q = self.check(y)?;
        let n = self.dim();
        if p + q < n {
            return Err(Error::Degree(format!(
                "product degree {} is below -{n}",
                x.degree + y.degree
            )));
        }
        let a = self.dual_cocycle(x)?;
        let b = self.dual_cocycle(y)?;
        let m = &self.manifold;
        let cup = cup_product(&m.complex, &m.character, &a, &b)?;
        let cap = cap_product(&m.complex, &m.character, &m.fundamental_cycle(), &cup)?;
        let mut sign_exp = p * (n - q);
        if self.dold == DoldSign::Enabled {
            sign_exp += n * (n - q);
        }
        let degree = x.degree + y.degree;
        let class = self.class_of_cycle(degree, &cap.coeffs)?;
        if sign_exp % 2 == 1 {
            self.scale(-1, &class)
        } else {
            Ok(class)
        }
    }
}

impl ClosedManifold {
    fn fundamental_cycle(&self) -> Chain {
        Chain {
            degree: self.dim(),
            coeffs: self.fundamental.clone(),
            twisted: true,
        }
    }
}

/// One-shot product on `(K, w)`; builds the ring each call.
pub fn intersection_product(
    x: &GradedClass,
    y: &GradedClass,
    k: &SimplicialComplex,
    w: &OrientationCharacter,
) -> Result<GradedClass> {
    IntersectionRing::new(ClosedManifold::new(k.clone(), w.clone())?)?.product(x, y)
}
