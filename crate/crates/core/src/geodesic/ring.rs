use std::collections::BTreeMap;

use crate::chain::HomologySummary;
use crate::error::{Error, Result};
use crate::geodesic::gysin::reduce;
use crate::geodesic::spec::{GeneratorId, ProductEntry, Space};

/// The regraded intersection ring of a closed `dim`-manifold, given by its
/// homology and the products of generators that degree and the unit do not
/// force.
#[derive(Clone, Debug)]
pub struct GeneratorRing {
    space: Space,
    dim: usize,
    orders: Vec<Vec<u64>>,
    table: BTreeMap<((usize, usize), (usize, usize)), Vec<i64>>,
}

impl GeneratorRing {
    pub fn new(space: Space, groups: &HomologySummary, entries: &[ProductEntry]) -> Result<Self> {
        let dim = groups.degrees.len() - 1;
        let orders: Vec<Vec<u64>> = groups.degrees.iter().map(|g| g.orders()).collect();
        if orders[dim].first() != Some(&0) {
            return Err(Error::Structure(format!(
                "top homology of a {space:?} ring has no free generator"
            )));
        }
        let mut ring = GeneratorRing {
            space,
            dim,
            orders,
            table: BTreeMap::new(),
        };
        for e in entries {
            let a = ring.generator(&e.left)?;
            let b = ring.generator(&e.right)?;
            let target = (a.0 + b.0).checked_sub(dim).ok_or_else(|| {
                Error::Structure(format!("{} · {} has negative degree", e.left, e.right))
            })?;
            let mut v = vec![0; ring.orders[target].len()];
            for (name, &c) in &e.value {
                let g = ring.generator(name)?;
                if g.0 != target {
                    return Err(Error::Structure(format!(
                        "{name} does not have the degree of {} · {}",
                        e.left, e.right
                    )));
                }
                v[g.1] += c;
            }
            reduce(&mut v, &ring.orders[target]);
            ring.table.insert((a, b), v);
        }
        Ok(ring)
    }

    fn generator(&self, name: &str) -> Result<(usize, usize)> {
        let g: GeneratorId = name.parse()?;
        if g.space != self.space || g.degree > self.dim || g.index >= self.orders[g.degree].len() {
            return Err(Error::Structure(format!(
                "{name} is not a generator of this ring"
            )));
        }
        Ok((g.degree, g.index))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Orders of the generators of `H_k`, free ones as `0`.
    pub fn orders(&self, k: usize) -> &[u64] {
        self.orders.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn unit(&self) -> (usize, usize) {
        (self.dim, 0)
    }

    fn name(&self, g: (usize, usize)) -> GeneratorId {
        GeneratorId {
            space: self.space,
            degree: g.0,
            index: g.1,
        }
    }

    /// Product of two generators, in the group of degree `a.0 + b.0 - dim`.
    pub fn generator_product(
        &self,
        a: (usize, usize),
        b: (usize, usize),
    ) -> Result<Option<Vec<i64>>> {
        let Some(target) = (a.0 + b.0).checked_sub(self.dim) else {
            return Ok(None);
        };
        let width = self.orders[target].len();
        if width == 0 {
            return Ok(Some(Vec::new()));
        }
        let unit = self.unit();
        let single = |g: (usize, usize)| {
            let mut v = vec![0; width];
            v[g.1] = 1;
            v
        };
        if a == unit {
            return Ok(Some(single(b)));
        }
        if b == unit {
            return Ok(Some(single(a)));
        }
        if let Some(v) = self.table.get(&(a, b)) {
            return Ok(Some(v.clone()));
        }
        if let Some(v) = self.table.get(&(b, a)) {
            // Graded commutativity in regraded degrees.
            let (p, q) = (a.0 as i64 - self.dim as i64, b.0 as i64 - self.dim as i64);
            let mut v = v.clone();
            if (p * q) % 2 != 0 {
                v.iter_mut().for_each(|x| *x = -*x);
                reduce(&mut v, &self.orders[target]);
            }
            return Ok(Some(v));
        }
        Err(Error::MissingData(format!(
            "product {} · {} is not forced by degree or the unit; supply it",
            self.name(a),
            self.name(b)
        )))
    }

    /// Bilinear product of coordinate vectors in degrees `i` and `j`.
    pub fn product(&self, i: usize, x: &[i64], j: usize, y: &[i64]) -> Result<Option<Vec<i64>>> {
        let Some(target) = (i + j).checked_sub(self.dim) else {
            return Ok(None);
        };
        let mut out = vec![0; self.orders[target].len()];
        for (a, &ca) in x.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in y.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let v = self
                    .generator_product((i, a), (j, b))?
                    .expect("degree checked");
                for (o, c) in out.iter_mut().zip(v) {
                    *o += ca * cb * c;
                }
            }
        }
        reduce(&mut out, &self.orders[target]);
        Ok(Some(out))
    }

    /// Associativity and two-sided unit on all generator triples.
    pub fn check_axioms(&self) -> Result<()> {
        let gens: Vec<(usize, usize)> = (0..=self.dim)
            .flat_map(|k| (0..self.orders[k].len()).map(move |i| (k, i)))
            .collect();
        let unit = self.unit();
        let e = |g: (usize, usize)| {
            let mut v = vec![0; self.orders[g.0].len()];
            v[g.1] = 1;
            v
        };
        for &a in &gens {
            if self.generator_product(unit, a)? != Some(e(a))
                || self.generator_product(a, unit)? != Some(e(a))
            {
                return Err(Error::Structure(format!(
                    "{} is not fixed by the unit",
                    self.name(a)
                )));
            }
        }
        for &a in &gens {
            for &b in &gens {
                let Some(ab) = self.generator_product(a, b)? else {
                    continue;
                };
                let dab = a.0 + b.0 - self.dim;
                for &c in &gens {
                    let Some(dbc) = (b.0 + c.0).checked_sub(self.dim) else {
                        continue;
                    };
                    let bc = self.generator_product(b, c)?.expect("degree checked");
                    let left = self.product(dab, &ab, c.0, &e(c))?;
                    let right = self.product(a.0, &e(a), dbc, &bc)?;
                    if left != right {
                        return Err(Error::Structure(format!(
                            "({} · {}) · {} differs from {} · ({} · {})",
                            self.name(a),
                            self.name(b),
                            self.name(c),
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
