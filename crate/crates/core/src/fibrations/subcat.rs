use crate::check::{Check, Witness};
use crate::fincat::FullSubcategory;

/// Closed under incoming morphisms: `x -> y` with `y ∈ S` forces `x ∈ S`.
pub fn is_sieve(s: &FullSubcategory) -> Check {
    let c = s.parent();
    for f in c.morphism_ids() {
        if s.contains(c.dst(f)) && !s.contains(c.src(f)) {
            return Check::fail(Witness::Morphism { morphism: f });
        }
    }
    Check::pass()
}

/// Closed under outgoing morphisms.
pub fn is_cosieve(s: &FullSubcategory) -> Check {
    let c = s.parent();
    for f in c.morphism_ids() {
        if s.contains(c.src(f)) && !s.contains(c.dst(f)) {
            return Check::fail(Witness::Morphism { morphism: f });
        }
    }
    Check::pass()
}

/// Closed under factorizations: for composable `f: x -> r`, `g: r -> y` with
/// `x, y ∈ S`, also `r ∈ S`.
pub fn is_interval(s: &FullSubcategory) -> Check {
    let c = s.parent();
    for f in c.morphism_ids() {
        if !s.contains(c.src(f)) {
            continue;
        }
        let r = c.dst(f);
        if s.contains(r) {
            continue;
        }
        if let Some(g) = c.morphisms_out_of(r).find(|&g| s.contains(c.dst(g))) {
            return Check::fail(Witness::Factorization { f, g, through: r });
        }
    }
    Check::pass()
}
