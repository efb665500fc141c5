//! Grothendieck construction of set-valued presheaves and its inverse,
//! straightening of right fibrations with discrete fibers.

use std::collections::HashMap;
use std::sync::Arc;

use super::classify::is_right_fibration;
use super::fibers::{essential_fiber, EssentialFiber};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Functor, MorId, Morphism, ObjId};

/// A presheaf of finite sets on `base`: `G(d) = 0..sizes[d]` and, for each
/// morphism `u: d -> d'`, a function `maps[u]: G(d') -> G(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedDiagram {
    base: Arc<FinCategory>,
    sizes: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl SetValuedDiagram {
    pub fn new(base: Arc<FinCategory>, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::NotFunctorial(msg));
        if sizes.len() != base.object_count() || maps.len() != base.morphism_count() {
            return bad("size or map count does not match the base".into());
        }
        for (u, map) in maps.iter().enumerate() {
            let m = base.morphism(u);
            if map.len() != sizes[m.dst] || map.iter().any(|&s| s >= sizes[m.src]) {
                return bad(format!("map of morphism {u} has wrong domain or codomain"));
            }
        }
        for d in base.objects() {
            let id = &maps[base.identity(d)];
            if id.iter().enumerate().any(|(s, &t)| s != t) {
                return bad(format!("identity of {d} is not sent to the identity"));
            }
        }
        for u in base.morphism_ids() {
            for v in base.morphisms_out_of(base.dst(u)) {
                let vu = base.comp(v, u);
                // G(v∘u) = G(u)∘G(v)
                for s in 0..sizes[base.dst(v)] {
                    if maps[vu][s] != maps[u][maps[v][s]] {
                        return bad(format!("composite {v}∘{u} is not preserved"));
                    }
                }
            }
        }
        Ok(SetValuedDiagram { base, sizes, maps })
    }

    /// The constant one-point presheaf.
    pub fn singleton(base: Arc<FinCategory>) -> Self {
        let sizes = vec![1; base.object_count()];
        let maps = vec![vec![0]; base.morphism_count()];
        SetValuedDiagram { base, sizes, maps }
    }

    /// Coproduct of the representables `Hom(-, b)` for each `b` in
    /// `generators`. Elements of `G(d)` are pairs `(generator, h: d -> b)`
    /// in generator order, then ascending `h`.
    pub fn from_generators(base: Arc<FinCategory>, generators: &[ObjId]) -> Result<Self> {
        for &b in generators {
            base.check_object(b)?;
        }
        let mut elements: Vec<Vec<(usize, MorId)>> = vec![Vec::new(); base.object_count()];
        for (g, &b) in generators.iter().enumerate() {
            for h in base.morphisms_into(b) {
                elements[base.src(h)].push((g, h));
            }
        }
        let index: Vec<HashMap<(usize, MorId), usize>> = elements
            .iter()
            .map(|els| els.iter().enumerate().map(|(i, &e)| (e, i)).collect())
            .collect();
        let maps = base
            .morphism_ids()
            .map(|u| {
                elements[base.dst(u)]
                    .iter()
                    .map(|&(g, h)| index[base.src(u)][&(g, base.comp(h, u))])
                    .collect()
            })
            .collect();
        let sizes = elements.iter().map(Vec::len).collect();
        Ok(SetValuedDiagram { base, sizes, maps })
    }

    /// Quotient by the smallest congruence identifying each `(d, s, t)`,
    /// i.e. the smallest equivalence closed under every `G(u)`. Classes are
    /// renumbered by least member.
    pub fn quotient(&self, identify: &[(ObjId, usize, usize)]) -> Result<Self> {
        let base = &self.base;
        let mut parent: Vec<Vec<usize>> = self.sizes.iter().map(|&n| (0..n).collect()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut pending: Vec<(ObjId, usize, usize)> = Vec::new();
        for &(d, s, t) in identify {
            base.check_object(d)?;
            if s >= self.sizes[d] || t >= self.sizes[d] {
                return Err(Error::NotFunctorial(format!("element out of range at {d}")));
            }
            pending.push((d, s, t));
        }
        while let Some((d, s, t)) = pending.pop() {
            let (a, b) = (find(&mut parent[d], s), find(&mut parent[d], t));
            if a == b {
                continue;
            }
            parent[d][a.max(b)] = a.min(b);
            for u in base.morphisms_into(d) {
                pending.push((base.src(u), self.apply(u, s), self.apply(u, t)));
            }
        }
        let mut class: Vec<Vec<usize>> = Vec::with_capacity(parent.len());
        let mut sizes = Vec::with_capacity(parent.len());
        for p in parent.iter_mut() {
            let mut label = vec![usize::MAX; p.len()];
            let mut next = 0;
            let mut of = Vec::with_capacity(p.len());
            for s in 0..p.len() {
                let r = find(p, s);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                of.push(label[r]);
            }
            class.push(of);
            sizes.push(next);
        }
        let maps = base
            .morphism_ids()
            .map(|u| {
                let (src, dst) = (base.src(u), base.dst(u));
                let mut map = vec![0; sizes[dst]];
                for s in 0..self.sizes[dst] {
                    map[class[dst][s]] = class[src][self.apply(u, s)];
                }
                map
            })
            .collect();
        SetValuedDiagram::new(base.clone(), sizes, maps)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn size(&self, d: ObjId) -> usize {
        self.sizes[d]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `G(u)(s)` for `u: d -> d'`, `s ∈ G(d')`.
    pub fn apply(&self, u: MorId, s: usize) -> usize {
        self.maps[u][s]
    }
}

/// Total category of pairs `(d, s)` with the projection to the base.
/// A morphism `(d, s) -> (d', s')` is a `u: d -> d'` with `G(u)(s') = s`.
pub fn grothendieck(g: &SetValuedDiagram) -> Functor {
    let base = g.base();
    let mut offset = Vec::with_capacity(g.sizes.len());
    let mut objects = Vec::new();
    for d in base.objects() {
        offset.push(objects.len());
        objects.extend((0..g.sizes[d]).map(|s| (d, s)));
    }
    let object_id = |d: ObjId, s: usize| offset[d] + s;

    // morphism (u, s') for s' ∈ G(dst u)
    let mut arrows: Vec<(MorId, usize)> = Vec::new();
    let mut arrow_index = HashMap::new();
    for u in base.morphism_ids() {
        for s in 0..g.sizes[base.dst(u)] {
            arrow_index.insert((u, s), arrows.len());
            arrows.push((u, s));
        }
    }
    let morphisms: Vec<Morphism> = arrows
        .iter()
        .map(|&(u, s)| {
            let m = base.morphism(u);
            Morphism {
                src: object_id(m.src, g.apply(u, s)),
                dst: object_id(m.dst, s),
            }
        })
        .collect();
    let identities = objects
        .iter()
        .map(|&(d, s)| arrow_index[&(base.identity(d), s)])
        .collect();
    let total = FinCategory::from_fn(objects.len(), morphisms, identities, |second, first| {
        let (v, s2) = arrows[second];
        let (u, _) = arrows[first];
        arrow_index[&(base.comp(v, u), s2)]
    })
    .expect("category of elements of a functorial diagram");
    let on_objects = objects.iter().map(|&(d, _)| d).collect();
    let on_morphisms = arrows.iter().map(|&(u, _)| u).collect();
    Functor::new(Arc::new(total), base.clone(), on_objects, on_morphisms)
        .expect("projection from the category of elements")
}

/// Transport `G(u)(c')`: lift `u: d -> d'` along `f` at the representative
/// of component `c'` of the fiber over `d'`.
fn transport(
    f: &Functor,
    fibers: &[EssentialFiber],
    reps: &[Vec<usize>],
    u: MorId,
    component: usize,
) -> Result<usize> {
    let (c, d) = (f.source(), f.target());
    let (base_src, base_dst) = (d.src(u), d.dst(u));
    let upper = &fibers[base_dst];
    let (x1, alpha) = upper.objects[reps[base_dst][component]];
    let alpha_inv = d.inverse(alpha).expect("fiber objects carry isomorphisms");
    let v = d.comp(alpha_inv, u);
    let lower = &fibers[base_src];
    for x in c.objects() {
        for &phi in c.hom(x, x1) {
            for &beta in d.hom(f.object(x), base_src) {
                if d.is_iso(beta) && d.comp(v, beta) == f.morphism(phi) {
                    let i = lower.index_of(x, beta).expect("iso pair lies in the fiber");
                    return Ok(lower.component_of[i]);
                }
            }
        }
    }
    Err(Error::Precondition(format!(
        "morphism {u} has no lift at source object {x1}; not a right fibration"
    )))
}

/// Straightening of a right fibration whose essential fibers are disjoint
/// unions of contractible groupoids: `G(d)` is the set of components of the
/// fiber over `d`, ordered by least fiber object.
pub fn straighten(f: &Functor) -> Result<SetValuedDiagram> {
    let right = is_right_fibration(f)?;
    if let Some(w) = right.witness {
        return Err(Error::Precondition(format!("not a right fibration: {w}")));
    }
    let d = f.target();
    let mut fibers = Vec::with_capacity(d.object_count());
    let mut reps = Vec::with_capacity(d.object_count());
    for y in d.objects() {
        let fiber = essential_fiber(f, y)?;
        if let Some(w) = fiber.is_discrete().witness {
            return Err(Error::Precondition(format!(
                "fiber over {y} is not discrete: {w}"
            )));
        }
        let mut first = vec![usize::MAX; fiber.components];
        for (i, &comp) in fiber.component_of.iter().enumerate() {
            if first[comp] == usize::MAX {
                first[comp] = i;
            }
        }
        reps.push(first);
        fibers.push(fiber);
    }
    let sizes: Vec<usize> = fibers.iter().map(|fb| fb.components).collect();
    let mut maps = Vec::with_capacity(d.morphism_count());
    for u in d.morphism_ids() {
        let map = (0..sizes[d.dst(u)])
            .map(|comp| transport(f, &fibers, &reps, u, comp))
            .collect::<Result<Vec<_>>>()?;
        maps.push(map);
    }
    SetValuedDiagram::new(d.clone(), sizes, maps)
}

/// The comparison functor `C -> ∫G` over the base, for `G = straighten(f)`:
/// `x ↦ (F x, [x, id])`. Together with `projection ∘ Φ = F` and `Φ` an
/// equivalence this certifies `grothendieck(straighten(F)) ≃ F`.
pub fn straightening_comparison(f: &Functor, g: &SetValuedDiagram) -> Result<(Functor, Functor)> {
    let projection = grothendieck(g);
    let total = projection.source();
    let c = f.source();
    let d = f.target();
    let mut element_of = Vec::with_capacity(c.object_count());
    for x in c.objects() {
        let y = f.object(x);
        let fiber = essential_fiber(f, y)?;
        let i = fiber
            .index_of(x, d.identity(y))
            .expect("(x, id) lies in the fiber over F x");
        element_of.push(fiber.component_of[i]);
    }
    let object_of = |x: ObjId| -> ObjId {
        total
            .objects()
            .find(|&t| projection.object(t) == f.object(x))
            .map(|first| first + element_of[x])
            .expect("total category has the element")
    };
    let on_objects: Vec<ObjId> = c.objects().map(object_of).collect();
    let mut on_morphisms = Vec::with_capacity(c.morphism_count());
    for m in c.morphism_ids() {
        let (a, b) = (on_objects[c.src(m)], on_objects[c.dst(m)]);
        let image = total
            .hom(a, b)
            .iter()
            .copied()
            .find(|&t| projection.morphism(t) == f.morphism(m))
            .ok_or_else(|| {
                Error::Precondition(format!("morphism {m} has no image in the total category"))
            })?;
        on_morphisms.push(image);
    }
    let phi = Functor::new(c.clone(), total.clone(), on_objects, on_morphisms)?;
    Ok((phi, projection))
}

/// Searches for a natural bijection between two diagrams on the same base.
/// Elements are assigned one at a time; each choice `π(s) = t` forces
/// `π(G_a(u)(s)) = G_b(u)(t)` for every `u` into the object of `s`, so a
/// single choice fixes the whole subdiagram generated by `s`.
pub fn diagrams_isomorphic(a: &SetValuedDiagram, b: &SetValuedDiagram) -> Option<Vec<Vec<usize>>> {
    if a.base != b.base || a.sizes != b.sizes {
        return None;
    }
    type Partial = Vec<Vec<Option<usize>>>;

    /// Sets `π_d(s) = t` and everything it forces; false on a conflict.
    fn force(a: &SetValuedDiagram, b: &SetValuedDiagram, pi: &mut Partial, used: &mut [Vec<bool>], d: ObjId, s: usize, t: usize) -> bool {
        let mut queue = vec![(d, s, t)];
        while let Some((d, s, t)) = queue.pop() {
            match pi[d][s] {
                Some(old) if old == t => continue,
                Some(_) => return false,
                None if used[d][t] => return false,
                None => {
                    pi[d][s] = Some(t);
                    used[d][t] = true;
                }
            }
            for u in a.base().morphisms_into(d) {
                let src = a.base().src(u);
                queue.push((src, a.apply(u, s), b.apply(u, t)));
            }
        }
        true
    }

    fn search(a: &SetValuedDiagram, b: &SetValuedDiagram, pi: &mut Partial, used: &mut Vec<Vec<bool>>) -> bool {
        let next = pi
            .iter()
            .enumerate()
            .find_map(|(d, row)| row.iter().position(Option::is_none).map(|s| (d, s)));
        let Some((d, s)) = next else {
            return true;
        };
        for t in 0..a.sizes[d] {
            if used[d][t] {
                continue;
            }
            let (saved_pi, saved_used) = (pi.clone(), used.clone());
            if force(a, b, pi, used, d, s, t) && search(a, b, pi, used) {
                return true;
            }
            *pi = saved_pi;
            *used = saved_used;
        }
        false
    }

    let mut pi: Partial = a.sizes.iter().map(|&n| vec![None; n]).collect();
    let mut used: Vec<Vec<bool>> = a.sizes.iter().map(|&n| vec![false; n]).collect();
    if search(a, b, &mut pi, &mut used) {
        Some(pi.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect())
    } else {
        None
    }
}
