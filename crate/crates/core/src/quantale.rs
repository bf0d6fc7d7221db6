//! Finite generalized quantales and quantale terms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laws::{Carrier, QuantaleOps};
use crate::order::{FinPoset, Flags, Notation, Pomonoid};

/// A finite join-semilattice with a pomonoid sum distributing over binary
/// (hence all non-empty) joins on both sides.
#[derive(Clone, PartialEq, Eq)]
pub struct FinQuantale {
    add: Pomonoid,
    join: Arc<[usize]>,
    bottom: Option<usize>,
}

impl fmt::Debug for FinQuantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinQuantale{{{:?}}}", self.add.poset())
    }
}

impl FinQuantale {
    /// Validates an additive pomonoid as a generalized quantale.
    pub fn new(add: Pomonoid) -> Result<Self> {
        let poset = add.poset();
        let n = poset.len();
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                join[x * n + y] = poset.lub(x, y).ok_or_else(|| {
                    Error::NotAJoinSemilattice(format!("{{{}, {}}}", poset.name(x), poset.name(y)))
                })?;
            }
        }
        let q = FinQuantale {
            bottom: poset.least(),
            add,
            join: join.into(),
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let bc = q.join(b, c);
                    if q.plus(a, bc) != q.join(q.plus(a, b), q.plus(a, c)) {
                        return Err(Error::law(
                            "sum distributes over join (left)",
                            format!("({}, {}, {})", q.name(a), q.name(b), q.name(c)),
                        ));
                    }
                    if q.plus(bc, a) != q.join(q.plus(b, a), q.plus(c, a)) {
                        return Err(Error::law(
                            "sum distributes over join (right)",
                            format!("({}, {}, {})", q.name(a), q.name(b), q.name(c)),
                        ));
                    }
                }
            }
        }
        Ok(q)
    }

    pub fn from_fn(poset: FinPoset, plus: impl Fn(usize, usize) -> usize, zero: usize) -> Result<Self> {
        Self::new(Pomonoid::from_fn(poset, plus, zero, Notation::Additive)?)
    }

    pub fn pomonoid(&self) -> &Pomonoid {
        &self.add
    }

    pub fn poset(&self) -> &FinPoset {
        self.add.poset()
    }

    pub fn len(&self) -> usize {
        self.add.len()
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.add.name(x)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.poset().index(name)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset().leq(x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    #[inline]
    pub fn plus(&self, x: usize, y: usize) -> usize {
        self.add.op(x, y)
    }

    pub fn zero(&self) -> usize {
        self.add.unit()
    }

    /// The least element, which is the empty join when it exists.
    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn is_complete(&self) -> bool {
        self.bottom.is_some()
    }

    pub fn flags(&self) -> Flags {
        self.add.flags()
    }

    pub fn is_cdi(&self) -> bool {
        self.add.is_cdi()
    }

    /// Join of a finite family; the empty family has a join only when the
    /// quantale is complete.
    pub fn big_join(&self, xs: impl IntoIterator<Item = usize>) -> Option<usize> {
        xs.into_iter()
            .fold(None, |acc, x| Some(acc.map_or(x, |a| self.join(a, x))))
            .or(self.bottom)
    }

    pub fn top(&self) -> usize {
        self.big_join(0..self.len()).expect("non-empty carrier")
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

impl Carrier for FinQuantale {
    type Elem = usize;
    fn leq(&self, a: &usize, b: &usize) -> bool {
        FinQuantale::leq(self, *a, *b)
    }
    fn show(&self, a: &usize) -> String {
        self.name(*a).to_string()
    }
}

impl QuantaleOps for FinQuantale {
    fn join(&self, a: &usize, b: &usize) -> usize {
        FinQuantale::join(self, *a, *b)
    }
    fn plus(&self, a: &usize, b: &usize) -> usize {
        FinQuantale::plus(self, *a, *b)
    }
    fn zero(&self) -> usize {
        FinQuantale::zero(self)
    }
}

/// A formal non-empty finite join of additive monoid terms. Each joinand
/// is a sequence of variables read as a sum; the empty sequence is `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantaleTerm {
    joinands: BTreeSet<Vec<String>>,
}

impl QuantaleTerm {
    pub fn var(name: impl Into<String>) -> Self {
        QuantaleTerm {
            joinands: BTreeSet::from([vec![name.into()]]),
        }
    }

    pub fn zero() -> Self {
        QuantaleTerm {
            joinands: BTreeSet::from([Vec::new()]),
        }
    }

    pub fn from_joinands(joinands: impl IntoIterator<Item = Vec<String>>) -> Result<Self> {
        let joinands: BTreeSet<Vec<String>> = joinands.into_iter().collect();
        if joinands.is_empty() {
            return Err(Error::Malformed("a quantale term needs a joinand".into()));
        }
        Ok(QuantaleTerm { joinands })
    }

    pub fn joinands(&self) -> impl Iterator<Item = &[String]> {
        self.joinands.iter().map(|v| v.as_slice())
    }

    pub fn join(&self, other: &Self) -> Self {
        QuantaleTerm {
            joinands: self.joinands.union(&other.joinands).cloned().collect(),
        }
    }

    /// `(⋁ sᵢ) + (⋁ tⱼ) = ⋁ (sᵢ + tⱼ)`.
    pub fn plus(&self, other: &Self) -> Self {
        let mut joinands = BTreeSet::new();
        for s in &self.joinands {
            for t in &other.joinands {
                let mut st = s.clone();
                st.extend(t.iter().cloned());
                joinands.insert(st);
            }
        }
        QuantaleTerm { joinands }
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        self.joinands.iter().flatten().map(|s| s.as_str()).collect()
    }

    /// Parses `x + y v z v 0`; `∨` may be used for `v`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.replace('∨', " v ");
        let joinands = text
            .split(" v ")
            .map(|j| {
                j.split('+')
                    .map(str::trim)
                    .filter(|s| *s != "0")
                    .map(|s| {
                        if s.is_empty() {
                            Err(Error::Malformed(format!("term `{text}`")))
                        } else {
                            Ok(s.to_string())
                        }
                    })
                    .collect::<Result<Vec<String>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_joinands(joinands)
    }
}

impl fmt::Display for QuantaleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.joinands.iter().enumerate() {
            if i > 0 {
                f.write_str(" v ")?;
            }
            if j.is_empty() {
                f.write_str("0")?;
            } else {
                f.write_str(&j.join("+"))?;
            }
        }
        Ok(())
    }
}

/// Evaluates a term in any generalized quantale.
pub fn eval_term_in<Q: QuantaleOps>(t: &QuantaleTerm, env: &BTreeMap<String, Q::Elem>, q: &Q) -> Result<Q::Elem> {
    let mut acc: Option<Q::Elem> = None;
    for j in t.joinands() {
        let mut sum = q.zero();
        for v in j {
            let x = env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            sum = q.plus(&sum, x);
        }
        acc = Some(match acc {
            None => sum,
            Some(a) => q.join(&a, &sum),
        });
    }
    Ok(acc.expect("terms are non-empty"))
}

/// Evaluates a term in a finite quantale with variables bound by name.
pub fn eval_term(t: &QuantaleTerm, env: &BTreeMap<String, usize>, q: &FinQuantale) -> Result<usize> {
    eval_term_in(t, env, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::n2;

    #[test]
    fn n2_is_cdi_complete() {
        let q = n2();
        assert!(q.is_cdi() && q.is_complete());
        assert!(!q.flags().idempotent);
        assert_eq!(q.top(), 2);
    }

    #[test]
    fn terms() {
        let q = n2();
        let env = BTreeMap::from([("x".to_string(), 1), ("y".to_string(), 1)]);
        assert_eq!(eval_term(&QuantaleTerm::parse("x+y").unwrap(), &env, &q).unwrap(), 2);
        let env2 = BTreeMap::from([("x".to_string(), 1), ("y".to_string(), 2)]);
        assert_eq!(eval_term(&QuantaleTerm::parse("x v y").unwrap(), &env2, &q).unwrap(), 2);
        assert_eq!(eval_term(&QuantaleTerm::zero(), &env, &q).unwrap(), 0);
        assert!(matches!(
            eval_term(&QuantaleTerm::var("z"), &env, &q),
            Err(Error::UnboundVariable(_))
        ));
        let t = QuantaleTerm::parse("x v y").unwrap().plus(&QuantaleTerm::var("z"));
        assert_eq!(t.to_string(), "x+z v y+z");
    }

    #[test]
    fn non_semilattice_rejected() {
        let p = FinPoset::discrete(&["a", "b"]).unwrap();
        let e = FinQuantale::from_fn(p, |x, y| if x == 0 { y } else if y == 0 { x } else { 1 }, 0).unwrap_err();
        assert!(matches!(e, Error::NotAJoinSemilattice(_)));
    }
}
