//! Blow-ups with coordinate-subspace centers, one affine chart at a time.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Ring, VarId};
use crate::subst::Substitution;

/// The locus `t_i = 0, i ∈ vars` in the affine space of `ring`.
#[derive(Debug, Clone, PartialEq)]
pub struct Center {
    ring: Ring,
    vars: Vec<VarId>,
}

impl Center {
    pub fn new(ring: &Ring, vars: &[VarId]) -> Result<Center> {
        if vars.is_empty() {
            return Err(Error::EmptyCenter);
        }
        if vars.iter().any(|v| v.0 >= ring.nvars()) {
            return Err(Error::BadIndex);
        }
        let mut vars = vars.to_vec();
        vars.sort_unstable();
        vars.dedup();
        Ok(Center { ring: ring.clone(), vars })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::from_vars(&self.ring, &self.vars)
    }
}

/// The chart where the `i`-th coordinate of the exceptional projective space
/// is invertible: `t_j -> t_i' t_j'` for `j` in the center other than `i`,
/// every other variable is renamed or kept.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartMap {
    center: Center,
    chart_var: VarId,
    target: Ring,
    substitution: Substitution,
    exceptional_var: VarId,
}

/// `x_1_2 -> xp_1_2`, `t -> tp`, with more `p`s until the name is free.
pub fn primed_name(name: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut out = String::from(name);
    loop {
        out = match out.find('_') {
            Some(k) => {
                let mut s = String::from(&out[..k]);
                s.push('p');
                s.push_str(&out[k..]);
                s
            }
            None => {
                let mut s = out.clone();
                s.push('p');
                s
            }
        };
        if !taken(&out) {
            return out;
        }
    }
}

impl ChartMap {
    pub fn new(center: &Center, i: VarId) -> Result<ChartMap> {
        if !center.contains(i) {
            return Err(Error::NotInCenter);
        }
        let source = center.ring();
        let mut names: Vec<String> = source.names().to_vec();
        for &v in center.vars() {
            let fresh = {
                let current = &names;
                primed_name(source.name(v), &|s: &str| current.iter().any(|n| n == s) || source.has_var(s))
            };
            names[v.0] = fresh;
        }
        let target = Ring::new(source.field(), &names)?;
        let ti = Polynomial::var(&target, i);
        let images = source
            .vars()
            .map(|v| {
                let x = Polynomial::var(&target, v);
                if v != i && center.contains(v) {
                    &ti * &x
                } else {
                    x
                }
            })
            .collect();
        let substitution = Substitution::new(source, &target, images)?;
        Ok(ChartMap {
            center: center.clone(),
            chart_var: i,
            target,
            substitution,
            exceptional_var: i,
        })
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn chart_var(&self) -> VarId {
        self.chart_var
    }

    pub fn source(&self) -> &Ring {
        self.center.ring()
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn substitution(&self) -> &Substitution {
        &self.substitution
    }

    /// The variable of the target ring cutting out the exceptional divisor.
    pub fn exceptional_var(&self) -> VarId {
        self.exceptional_var
    }

    /// Images of the source variables as `(name, polynomial text)` pairs.
    pub fn substitution_text(&self) -> Vec<(String, String)> {
        self.source()
            .vars()
            .map(|v| (String::from(self.source().name(v)), alloc::format!("{}", self.substitution.image(v))))
            .collect()
    }
}

/// `make_chart`: the chart of `center` where `i` is the exceptional coordinate.
pub fn make_chart(center: &Center, i: VarId) -> Result<ChartMap> {
    ChartMap::new(center, i)
}

pub fn total_transform(f: &Polynomial, c: &ChartMap) -> Result<Polynomial> {
    c.substitution.apply(f)
}

/// Total transform with the exceptional variable factored out:
/// `(k, f')` with `total = t_i'^k f'`.
pub fn strict_transform_poly(f: &Polynomial, c: &ChartMap) -> Result<(u32, Polynomial)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    total_transform(f, c)?.factor_out(c.exceptional_var)
}

/// Strict transform of an ideal whose generators are homogeneous in the
/// center variables; then it is generated by the generators' strict
/// transforms. Other generating sets are rejected.
pub fn strict_transform_ideal(i: &Ideal, c: &ChartMap) -> Result<Ideal> {
    if i.ring() != c.source() {
        return Err(Error::RingMismatch);
    }
    let vars = c.center.vars();
    if !i.generators().iter().all(|g| g.is_homogeneous(vars)) {
        return Err(Error::NonHomogeneousGenerators);
    }
    let gens = i
        .generators()
        .iter()
        .map(|g| strict_transform_poly(g, c).map(|(_, h)| h))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new_dedup(&c.target, gens))
}
