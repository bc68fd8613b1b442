use crate::catalog::GridTorus;
use crate::chain::{ClosedManifold, GradedClass, IntersectionRing, OrientationCharacter};
use crate::error::{Error, Result};
use crate::rational::q_frac;
use crate::snf::{solve_integer_system, IntMatrix};
use crate::torus::classes::homology_class_torus;
use crate::torus::simplex::{AffineSimplex, TorusChain};

const GRID_SIZE: i64 = 3;

/// A triangulated `Tⁿ` whose simplices are realized as affine simplices,
/// so that classes of the intersection ring can be compared with periods of
/// affine cycles.
pub struct TorusModel {
    grid: GridTorus,
    ring: IntersectionRing,
    /// Columns: periods of the homology generators in each degree.
    periods: Vec<IntMatrix>,
}

impl TorusModel {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_ring(n, IntersectionRing::new)
    }

    pub fn with_ring(
        n: usize,
        build: impl Fn(ClosedManifold) -> Result<IntersectionRing>,
    ) -> Result<Self> {
        let grid = GridTorus::new(n, GRID_SIZE)?;
        let character = OrientationCharacter::trivial(&grid.complex);
        let mut manifold = ClosedManifold::new(grid.complex.clone(), character)?;
        let top = realize(&grid, n, manifold.fundamental_chain());
        if homology_class_torus(&top)?[0] < 0 {
            manifold = manifold.reversed();
        }
        let ring = build(manifold)?;
        let mut periods = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let degree = k as i64 - n as i64;
            let basis = ring.basis(degree)?;
            let cols: Vec<Vec<i64>> = basis
                .iter()
                .map(|x| homology_class_torus(&realize(&grid, k, &ring.representative(x)?)))
                .collect::<Result<_>>()?;
            let rows = binomial(n, k);
            let mut p = IntMatrix::zeros(rows, cols.len());
            for (j, c) in cols.iter().enumerate() {
                for i in 0..rows {
                    p[(i, j)] = c[i];
                }
            }
            if p.rows() != p.cols() || p.determinant().abs() != 1 {
                return Err(Error::Structure(format!(
                    "degree {k} generators do not span H_{k}(T^{n})"
                )));
            }
            periods.push(p);
        }
        Ok(TorusModel {
            grid,
            ring,
            periods,
        })
    }

    pub fn ring(&self) -> &IntersectionRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    /// Ring class with the given periods.
    pub fn class_of_periods(&self, k: usize, periods: &[i64]) -> Result<GradedClass> {
        let p = self
            .periods
            .get(k)
            .ok_or_else(|| Error::Degree(format!("no degree {k} on T^{}", self.n())))?;
        let coords = solve_integer_system(p, periods)
            .ok_or_else(|| Error::Structure("periods are not those of an integral class".into()))?;
        Ok(GradedClass {
            degree: k as i64 - self.n() as i64,
            coords,
        })
    }

    pub fn periods_of_class(&self, x: &GradedClass) -> Result<Vec<i64>> {
        let k = usize::try_from(x.degree + self.n() as i64)
            .map_err(|_| Error::Degree(format!("degree {} is below -{}", x.degree, self.n())))?;
        let p = self
            .periods
            .get(k)
            .ok_or_else(|| Error::Degree(format!("no degree {k} on T^{}", self.n())))?;
        Ok(p.mul_vec(&x.coords))
    }

    pub fn class_of_chain(&self, c: &TorusChain) -> Result<GradedClass> {
        self.class_of_periods(c.degree(), &homology_class_torus(c)?)
    }

    /// A simplicial chain of the grid as an affine chain.
    pub fn realize(&self, k: usize, coeffs: &[i64]) -> TorusChain {
        realize(&self.grid, k, coeffs)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn realize(grid: &GridTorus, k: usize, coeffs: &[i64]) -> TorusChain {
    let mut c = TorusChain::zero(grid.n, k);
    for (lift, &coef) in grid.lifts[k].iter().zip(coeffs) {
        if coef == 0 {
            continue;
        }
        let vertices = lift
            .iter()
            .map(|v| v.iter().map(|&x| q_frac(x, grid.m)).collect())
            .collect();
        c.add(
            coef,
            crate::torus::simplex::LoopFamily::constant(AffineSimplex { vertices }),
        )
        .expect("grid simplices have the right shape");
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_generators_have_unimodular_periods() {
        for n in 1..=3 {
            let model = TorusModel::new(n).unwrap();
            assert_eq!(
                model.periods_of_class(&model.ring().unit()).unwrap(),
                vec![1]
            );
        }
    }
}
