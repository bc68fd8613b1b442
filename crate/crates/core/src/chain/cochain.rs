use crate::chain::complex::{OrientationCharacter, SimplicialComplex};
use crate::error::{Error, Result};

/// Integer values on the `degree`-simplices, in canonical simplex order.
/// A twisted cochain takes values in the orientation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<i64>,
    pub twisted: bool,
}

/// Integer coefficients on the `degree`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: Vec<i64>,
    pub twisted: bool,
}

impl Cochain {
    /// The constant 0-cochain 1.
    pub fn unit(k: &SimplicialComplex) -> Self {
        Cochain {
            degree: 0,
            values: vec![1; k.count(0)],
            twisted: false,
        }
    }
}

fn check_len(k: &SimplicialComplex, degree: usize, len: usize) -> Result<()> {
    if k.count(degree) != len {
        return Err(Error::Structure(format!(
            "{len} values given for {} simplices of dimension {degree}",
            k.count(degree)
        )));
    }
    Ok(())
}

/// Front-face/back-face product `(a ∪ b)(σ) = a(σ|[v₀..v_p]) · b(σ|[v_p..v_{p+q}])`,
/// with values of twisted factors transported into `σ`.
pub fn cup_product(
    k: &SimplicialComplex,
    w: &OrientationCharacter,
    a: &Cochain,
    b: &Cochain,
) -> Result<Cochain> {
    let (p, q) = (a.degree, b.degree);
    let d = p + q;
    if k.dim().map_or(true, |n| d > n) {
        return Err(Error::Degree(format!(
            "cup product of degrees {p} and {q} exceeds the dimension of the complex"
        )));
    }
    check_len(k, p, a.values.len())?;
    check_len(k, q, b.values.len())?;
    let values = (0..k.count(d))
        .map(|idx| {
            let (front, tf) = w.front_transport(k, d, idx, q);
            let (back, tb) = w.back_transport(k, d, idx, p);
            let mut v = a.values[front] * b.values[back];
            if a.twisted {
                v *= tf;
            }
            if b.twisted {
                v *= tb;
            }
            v
        })
        .collect();
    Ok(Cochain {
        degree: d,
        values,
        twisted: a.twisted != b.twisted,
    })
}

/// `σ ⌢ a = a(σ|[v₀..v_k]) · σ|[v_k..v_m]`.
pub fn cap_product(
    k: &SimplicialComplex,
    w: &OrientationCharacter,
    c: &Chain,
    a: &Cochain,
) -> Result<Chain> {
    let m = c.degree;
    let deg = a.degree;
    if deg > m {
        return Err(Error::Degree(format!(
            "cannot cap a {m}-chain with a {deg}-cochain"
        )));
    }
    check_len(k, m, c.coeffs.len())?;
    check_len(k, deg, a.values.len())?;
    let out_twisted = c.twisted != a.twisted;
    let mut coeffs = vec![0i64; k.count(m - deg)];
    for (idx, &x) in c.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (front, tf) = w.front_transport(k, m, idx, m - deg);
        let (back, tb) = w.back_transport(k, m, idx, deg);
        let mut v = x * a.values[front];
        if a.twisted {
            v *= tf;
        }
        if out_twisted {
            v *= tb;
        }
        coeffs[back] += v;
    }
    Ok(Chain {
        degree: m - deg,
        coeffs,
        twisted: out_twisted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_law_and_degree_bound() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let w = OrientationCharacter::trivial(&k);
        let a = Cochain {
            degree: 1,
            values: (0..k.count(1) as i64).collect(),
            twisted: false,
        };
        let one = Cochain::unit(&k);
        assert_eq!(cup_product(&k, &w, &a, &one).unwrap(), a);
        assert_eq!(cup_product(&k, &w, &one, &a).unwrap(), a);
        let b = Cochain {
            degree: 2,
            values: vec![1; k.count(2)],
            twisted: false,
        };
        assert!(matches!(cup_product(&k, &w, &a, &b), Err(Error::Degree(_))));
    }

    #[test]
    fn cap_with_unit_is_identity() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let w = OrientationCharacter::trivial(&k);
        let c = Chain {
            degree: 2,
            coeffs: vec![3],
            twisted: false,
        };
        assert_eq!(cap_product(&k, &w, &c, &Cochain::unit(&k)).unwrap(), c);
        // Capping with the dual of the whole simplex leaves its last vertex.
        let top = Cochain {
            degree: 2,
            values: vec![1],
            twisted: false,
        };
        let pt = cap_product(&k, &w, &c, &top).unwrap();
        assert_eq!(pt.coeffs, vec![0, 0, 3]);
    }
}
