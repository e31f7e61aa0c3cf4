use serde::Serialize;

use crate::exterior::{Ambient, GroupElement, Subspace};
use crate::linsys::LinearSystem;
use crate::scalars::Field;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// `dim U′ ≥ 6 − s`: not stable.
    Nonstable,
    /// `dim U′ ≥ 7 − s`: not semistable.
    Unstable,
}

impl Severity {
    pub fn threshold(self, s: usize) -> usize {
        match self {
            Severity::Nonstable => 6 - s,
            Severity::Unstable => 7 - s,
        }
    }
}

/// Subspaces `U ⊆ U′ ⊆ W` with `ω(U, U′) = 0` for every generator.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "Subspace<F>: Serialize"))]
pub struct DestabilizingWitness<F> {
    s: usize,
    u: Subspace<F>,
    u_prime: Subspace<F>,
    severity: Severity,
}

fn pairings_vanish<F: Field>(a: &LinearSystem<F>, u: &Subspace<F>, up: &Subspace<F>) -> bool {
    a.generators().iter().all(|g| g.vanishes_on(u.basis(), up.basis()))
}

impl<F: Field> DestabilizingWitness<F> {
    /// Checks every condition against `a` and records the strongest severity reached.
    pub fn certify(a: &LinearSystem<F>, s: usize, u: Subspace<F>, u_prime: Subspace<F>) -> Result<Self> {
        let fail = |m: &str| Err(Error::Precondition(format!("not a witness: {m}")));
        if !(1..=3).contains(&s) {
            return fail("s must be 1, 2 or 3");
        }
        if u.ambient() != Ambient::W || u_prime.ambient() != Ambient::W {
            return fail("subspaces must lie in W");
        }
        if u.dim() != s {
            return fail("dim U differs from s");
        }
        if !u_prime.contains_subspace(&u) {
            return fail("U is not contained in U′");
        }
        if u_prime.dim() < Severity::Nonstable.threshold(s) {
            return fail("U′ is too small");
        }
        if !pairings_vanish(a, &u, &u_prime) {
            return fail("some generator pairs U with U′ nontrivially");
        }
        let severity =
            if u_prime.dim() >= Severity::Unstable.threshold(s) { Severity::Unstable } else { Severity::Nonstable };
        Ok(DestabilizingWitness { s, u, u_prime, severity })
    }

    /// A totally isotropic subspace of dimension 3 or 4, as an `s = 3` witness.
    pub fn from_isotropic(a: &LinearSystem<F>, iso: &Subspace<F>) -> Result<Self> {
        if !(3..=4).contains(&iso.dim()) {
            return Err(Error::Precondition("isotropic witness needs dimension 3 or 4".into()));
        }
        let u = Subspace::span(Ambient::W, &iso.basis()[..3]);
        Self::certify(a, 3, u, iso.clone())
    }

    /// An unchecked claim, to be tested with [`verify_witness`].
    pub fn claim(s: usize, u: Subspace<F>, u_prime: Subspace<F>, severity: Severity) -> Self {
        DestabilizingWitness { s, u, u_prime, severity }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn u(&self) -> &Subspace<F> {
        &self.u
    }

    pub fn u_prime(&self) -> &Subspace<F> {
        &self.u_prime
    }

    pub fn severity(&self) -> Severity {
        self.severity
    }

    /// The witness for `g·A` induced by a witness for `A`.
    pub fn transport(&self, g: &GroupElement<F>) -> Self {
        DestabilizingWitness {
            s: self.s,
            u: g.transport(&self.u),
            u_prime: g.transport(&self.u_prime),
            severity: self.severity,
        }
    }
}

/// Exact re-check of a witness at its claimed severity.
pub fn verify_witness<F: Field>(a: &LinearSystem<F>, w: &DestabilizingWitness<F>) -> bool {
    (1..=3).contains(&w.s)
        && w.u.ambient() == Ambient::W
        && w.u_prime.ambient() == Ambient::W
        && w.u.dim() == w.s
        && w.u_prime.contains_subspace(&w.u)
        && w.u_prime.dim() >= w.severity.threshold(w.s)
        && pairings_vanish(a, &w.u, &w.u_prime)
}
