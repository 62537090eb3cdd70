//! G-groups, induction of G-groups, wreath products and semidirect
//! products.
//!
//! Composition convention throughout: `theta[g] . theta[h]` means "apply
//! `theta[h]` first", so the action axiom reads
//! `theta[mul(g,h)] = theta[g] . theta[h]`.

use std::sync::Arc;

use crate::group::{compose_images, FiniteGroup, GroupMap, MapKind, Subgroup, IDENTITY};
use crate::{Error, Limits, Result};

/// A true action theta: G -> Aut(N), stored as one automorphism image
/// array per actor element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAction {
    pub actor: Arc<FiniteGroup>,
    pub space: Arc<FiniteGroup>,
    pub theta: Vec<Vec<usize>>,
}

impl GAction {
    pub fn new(
        actor: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        theta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if theta.len() != actor.order() {
            return Err(Error::InvalidAction(
                "one automorphism per actor element required".into(),
            ));
        }
        for (g, images) in theta.iter().enumerate() {
            GroupMap::new(
                Arc::clone(&space),
                Arc::clone(&space),
                images.clone(),
                MapKind::Automorphism,
            )
            .map_err(|e| Error::InvalidAction(format!("theta[{g}]: {e}")))?;
        }
        if theta[IDENTITY].iter().enumerate().any(|(x, &fx)| x != fx) {
            return Err(Error::InvalidAction(
                "theta[identity] is not the identity".into(),
            ));
        }
        for g in actor.elements() {
            for h in actor.elements() {
                // theta[g] . theta[h], applying theta[h] first
                let gh = actor.mul(g, h);
                for x in space.elements() {
                    if theta[gh][x] != theta[g][theta[h][x]] {
                        return Err(Error::InvalidAction(format!(
                            "theta[{g}*{h}] != theta[{g}] . theta[{h}]"
                        )));
                    }
                }
            }
        }
        Ok(GAction {
            actor,
            space,
            theta,
        })
    }

    /// The trivial action of `actor` on `space`.
    pub fn trivial(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = space.elements().collect();
        let theta = vec![id; actor.order()];
        GAction {
            actor,
            space,
            theta,
        }
    }

    /// Build from images of a generating sequence of the actor.
    pub fn from_generator_images(
        actor: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        gens: &[usize],
        images: &[Vec<usize>],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidAction(
                "generator/image count mismatch".into(),
            ));
        }
        // propagate along a BFS tree over the actor
        let mut theta: Vec<Option<Vec<usize>>> = vec![None; actor.order()];
        theta[IDENTITY] = Some(space.elements().collect());
        let mut frontier = vec![IDENTITY];
        while let Some(g) = frontier.pop() {
            for (&s, img) in gens.iter().zip(images) {
                let gs = actor.mul(g, s);
                if theta[gs].is_none() {
                    // theta[g*s] = theta[g] . theta[s]
                    theta[gs] = Some(compose_images(theta[g].as_ref().unwrap(), img));
                    frontier.push(gs);
                }
            }
        }
        let theta: Vec<Vec<usize>> = theta
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidAction("generators do not generate the actor".into()))?;
        Self::new(actor, space, theta)
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.theta[g][x]
    }

    pub fn is_trivial(&self) -> bool {
        self.theta
            .iter()
            .all(|t| t.iter().enumerate().all(|(x, &fx)| x == fx))
    }

    /// Restrict the actor to a subgroup, reindexed to the abstract group.
    pub fn restrict(&self, h: &Subgroup) -> Result<GAction> {
        if h.ambient != self.actor {
            return Err(Error::Mismatch("subgroup of a different group".into()));
        }
        let theta = h.members.iter().map(|&m| self.theta[m].clone()).collect();
        GAction::new(Arc::clone(&h.group), Arc::clone(&self.space), theta)
    }
}

/// The induced G-group ind_H^G(N) of an H-group N.
///
/// The textbook model is functions f: G -> N with f(hg) = theta(h)(f(g));
/// such f is determined by its restriction to the coset representatives
/// Y, so tuples are stored on Y only. Right translation then becomes
/// `(g.f)(y) = theta[gamma_{yg}](f(y_{yg}))`.
#[derive(Clone, Debug)]
pub struct InducedGGroup {
    /// The H-group being induced; `base.actor` is the abstract subgroup.
    pub base: GAction,
    pub subgroup: Subgroup,
    /// N^{[G:H]} under pointwise multiplication.
    pub tuple_group: Arc<FiniteGroup>,
    /// The action of G on the tuple group.
    pub action: GAction,
}

/// Mixed-radix tuple codec for N^k: index = sum coords[i] * |N|^i.
#[derive(Clone, Debug)]
pub struct TupleCodec {
    pub base: usize,
    pub len: usize,
}

impl TupleCodec {
    pub fn order(&self) -> usize {
        self.base.pow(self.len as u32)
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        for &c in coords.iter().rev() {
            idx = idx * self.base + c;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut coords = Vec::with_capacity(self.len);
        for _ in 0..self.len {
            coords.push(idx % self.base);
            idx /= self.base;
        }
        coords
    }
}

/// The product group N^k under pointwise multiplication.
pub fn power_group(
    n: &FiniteGroup,
    k: usize,
    limits: &Limits,
) -> Result<(Arc<FiniteGroup>, TupleCodec)> {
    let codec = TupleCodec {
        base: n.order(),
        len: k,
    };
    let order = n
        .order()
        .checked_pow(k as u32)
        .filter(|&o| o <= limits.max_group_order)
        .ok_or_else(|| {
            Error::BoundExceeded(format!(
                "tuple group order {}^{} exceeds bound {}",
                n.order(),
                k,
                limits.max_group_order
            ))
        })?;
    let group = FiniteGroup::from_fn(order, |a, b| {
        let (ca, cb) = (codec.decode(a), codec.decode(b));
        let prod: Vec<usize> = ca.iter().zip(&cb).map(|(&x, &y)| n.mul(x, y)).collect();
        codec.encode(&prod)
    })?;
    Ok((Arc::new(group), codec))
}

pub fn induce_g_group(
    subgroup: &Subgroup,
    base: &GAction,
    limits: &Limits,
) -> Result<InducedGGroup> {
    if base.actor != subgroup.group {
        return Err(Error::Mismatch(
            "base action actor is not the subgroup".into(),
        ));
    }
    let g = &subgroup.ambient;
    let n = &base.space;
    let k = subgroup.index();
    let (tuple_group, codec) = power_group(n, k, limits)?;
    let mut theta = Vec::with_capacity(g.order());
    for s in g.elements() {
        // position-level data: out[i] = theta_base[gamma](in[pos(y')])
        let moves: Vec<(usize, &Vec<usize>)> = (0..k)
            .map(|i| {
                let yi = subgroup.coset_reps[i];
                let (gamma, y2) = subgroup.coset_factorize(g.mul(yi, s));
                (subgroup.rep_pos(y2), &base.theta[subgroup.to_sub(gamma)])
            })
            .collect();
        let images: Vec<usize> = (0..tuple_group.order())
            .map(|f| {
                let coords = codec.decode(f);
                let out: Vec<usize> = moves.iter().map(|&(src, aut)| aut[coords[src]]).collect();
                codec.encode(&out)
            })
            .collect();
        theta.push(images);
    }
    let action = GAction::new(Arc::clone(g), Arc::clone(&tuple_group), theta)?;
    Ok(InducedGGroup {
        base: base.clone(),
        subgroup: subgroup.clone(),
        tuple_group,
        action,
    })
}

impl InducedGGroup {
    pub fn codec(&self) -> TupleCodec {
        TupleCodec {
            base: self.base.space.order(),
            len: self.subgroup.index(),
        }
    }

    /// Evaluation at the identity coset (the ev_1 map).
    pub fn ev1(&self, tuple: usize) -> usize {
        tuple % self.base.space.order()
    }

    /// Embed n in the coordinate of coset representative position `pos`.
    pub fn embed(&self, n: usize, pos: usize) -> usize {
        n * self.base.space.order().pow(pos as u32)
    }
}

/// A semidirect product N x| G realized on pairs (n, g) with index
/// n + |N| * g and multiplication (n,g)(n',g') = (n * theta[g](n'), gg').
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub action: GAction,
    pub group: Arc<FiniteGroup>,
    pub inject_n: GroupMap,
    pub project_g: GroupMap,
}

pub fn semidirect_product(action: &GAction, limits: &Limits) -> Result<SemidirectProduct> {
    let n = &action.space;
    let g = &action.actor;
    let order = n
        .order()
        .checked_mul(g.order())
        .filter(|&o| o <= limits.max_group_order)
        .ok_or_else(|| {
            Error::BoundExceeded(format!(
                "semidirect order {}*{} exceeds bound {}",
                n.order(),
                g.order(),
                limits.max_group_order
            ))
        })?;
    let nn = n.order();
    let group = Arc::new(FiniteGroup::from_fn(order, |x, y| {
        let (xn, xg) = (x % nn, x / nn);
        let (yn, yg) = (y % nn, y / nn);
        n.mul(xn, action.apply(xg, yn)) + nn * g.mul(xg, yg)
    })?);
    let inject_n = GroupMap::new(
        Arc::clone(n),
        Arc::clone(&group),
        n.elements().collect(),
        MapKind::Homomorphism,
    )?;
    let project_g = GroupMap::new(
        Arc::clone(&group),
        Arc::clone(g),
        (0..order).map(|x| x / nn).collect(),
        MapKind::Homomorphism,
    )?;
    Ok(SemidirectProduct {
        action: action.clone(),
        group,
        inject_n,
        project_g,
    })
}

impl SemidirectProduct {
    pub fn pair(&self, n: usize, g: usize) -> usize {
        n + self.action.space.order() * g
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        let nn = self.action.space.order();
        (x % nn, x / nn)
    }
}

/// A right G-set on points 0..size, one permutation per group element.
#[derive(Clone, Debug)]
pub struct RightGSet {
    pub group: Arc<FiniteGroup>,
    /// `perms[g][a]` is the point a.g.
    pub perms: Vec<Vec<usize>>,
}

impl RightGSet {
    pub fn new(group: Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::InvalidAction(
                "one permutation per group element required".into(),
            ));
        }
        let size = perms[0].len();
        for p in &perms {
            let mut seen = vec![false; size];
            if p.len() != size
                || p.iter()
                    .any(|&x| x >= size || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::InvalidAction(
                    "not a permutation of the point set".into(),
                ));
            }
        }
        if perms[IDENTITY].iter().enumerate().any(|(a, &ag)| a != ag) {
            return Err(Error::InvalidAction("identity must fix every point".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for a in 0..size {
                    // a.(gh) = (a.g).h
                    if perms[gh][a] != perms[h][perms[g][a]] {
                        return Err(Error::InvalidAction(format!(
                            "right action axiom fails at ({g},{h},{a})"
                        )));
                    }
                }
            }
        }
        Ok(RightGSet { group, perms })
    }

    /// G acting on itself by right translation.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let perms = group
            .elements()
            .map(|g| group.elements().map(|a| group.mul(a, g)).collect())
            .collect();
        RightGSet {
            group: Arc::clone(&group),
            perms,
        }
    }

    pub fn size(&self) -> usize {
        self.perms[0].len()
    }
}

/// The wreath product N wr G over a right G-set A: the semidirect product
/// of N^|A| with G permuting coordinates by `g.(n_a) = (n_{a.g})`.
pub fn wreath_product(
    n: &Arc<FiniteGroup>,
    gset: &RightGSet,
    limits: &Limits,
) -> Result<SemidirectProduct> {
    let g = &gset.group;
    let (tuple_group, codec) = power_group(n, gset.size(), limits)?;
    let theta: Vec<Vec<usize>> = g
        .elements()
        .map(|s| {
            (0..tuple_group.order())
                .map(|f| {
                    let coords = codec.decode(f);
                    let out: Vec<usize> =
                        (0..gset.size()).map(|a| coords[gset.perms[s][a]]).collect();
                    codec.encode(&out)
                })
                .collect()
        })
        .collect();
    let action = GAction::new(Arc::clone(g), tuple_group, theta)?;
    semidirect_product(&action, limits)
}

/// The twisted generalized wreath product N wr_H G = ind_H^G(N) x| G.
pub fn twisted_wreath(
    subgroup: &Subgroup,
    base: &GAction,
    limits: &Limits,
) -> Result<SemidirectProduct> {
    let induced = induce_g_group(subgroup, base, limits)?;
    semidirect_product(&induced.action, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphism_group, IDENTITY};

    fn limits() -> Limits {
        Limits {
            max_group_order: 4096,
            ..Limits::default()
        }
    }

    /// The full function-space model of ind_H^G(N): maps f: G -> N with
    /// f(hg) = theta(h)(f(g)), acted on by right translation. Used as the
    /// oracle for the coset-representative storage.
    fn function_space_induction(
        subgroup: &Subgroup,
        base: &GAction,
    ) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let g = &subgroup.ambient;
        let n = &base.space;
        let mut fns: Vec<Vec<usize>> = vec![vec![]];
        for _ in g.elements() {
            let mut next = Vec::new();
            for f in &fns {
                for v in n.elements() {
                    let mut f2 = f.clone();
                    f2.push(v);
                    next.push(f2);
                }
            }
            fns = next;
        }
        let valid: Vec<Vec<usize>> = fns
            .into_iter()
            .filter(|f| {
                subgroup.members.iter().all(|&h| {
                    g.elements()
                        .all(|x| f[g.mul(h, x)] == base.apply(subgroup.to_sub(h), f[x]))
                })
            })
            .collect();
        // right translation: (s.f)(x) = f(x*s)
        let translated: Vec<Vec<usize>> = valid.clone();
        (valid, translated)
    }

    #[test]
    fn induced_matches_function_space_model() {
        // G = C4, H = {0,2}, N = C2 with the inversion action (trivial on C2,
        // so use N = C3 with inversion to exercise a nontrivial theta)
        let lim = limits();
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let inversion: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let base = GAction::new(
            Arc::clone(&h.group),
            Arc::clone(&c3),
            vec![c3.elements().collect(), inversion],
        )
        .unwrap();
        let ind = induce_g_group(&h, &base, &lim).unwrap();
        assert_eq!(ind.tuple_group.order(), 9);

        let (fns, _) = function_space_induction(&h, &base);
        assert_eq!(fns.len(), 9);
        // bijection: restrict f to the coset reps and encode
        let codec = ind.codec();
        let to_tuple = |f: &Vec<usize>| {
            let coords: Vec<usize> = h.coset_reps.iter().map(|&y| f[y]).collect();
            codec.encode(&coords)
        };
        let index_of: std::collections::HashMap<Vec<usize>, usize> = fns
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        // multiplication agrees
        for f1 in &fns {
            for f2 in &fns {
                let prod: Vec<usize> = f1.iter().zip(f2).map(|(&a, &b)| c3.mul(a, b)).collect();
                assert!(index_of.contains_key(&prod));
                assert_eq!(
                    ind.tuple_group.mul(to_tuple(f1), to_tuple(f2)),
                    to_tuple(&prod)
                );
            }
        }
        // the G-action agrees with right translation of the argument
        for s in c4.elements() {
            for f in &fns {
                let translated: Vec<usize> = c4.elements().map(|x| f[c4.mul(x, s)]).collect();
                assert_eq!(ind.action.apply(s, to_tuple(f)), to_tuple(&translated));
            }
        }
    }

    #[test]
    fn induced_full_subgroup_recovers_base() {
        let lim = limits();
        let s3 = Arc::new(FiniteGroup::named("S3", &lim).unwrap());
        let og = automorphism_group(&s3, &lim).unwrap();
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        // a nontrivial C2-action on S3: send the generator to a nontrivial
        // (inner) automorphism
        let nontrivial = og
            .auts
            .iter()
            .find(|a| a.iter().enumerate().any(|(x, &fx)| x != fx))
            .unwrap();
        let base = GAction::new(
            Arc::clone(&c2),
            Arc::clone(&s3),
            vec![s3.elements().collect(), nontrivial.clone()],
        )
        .unwrap();
        let full = Subgroup::full(Arc::clone(&c2));
        let base_on_sub = base.restrict(&full).unwrap();
        let ind = induce_g_group(&full, &base_on_sub, &lim).unwrap();
        assert_eq!(ind.tuple_group.order(), s3.order());
        for g in c2.elements() {
            for x in s3.elements() {
                assert_eq!(ind.action.apply(g, x), base.apply(g, x));
            }
        }
    }

    #[test]
    fn induced_swap_action_c2() {
        // G = C2, H trivial, N = C2: induction is C2 x C2 with coordinate swap
        let lim = limits();
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let h = Subgroup::trivial(Arc::clone(&c2));
        let n = Arc::new(FiniteGroup::cyclic(2));
        let base = GAction::trivial(Arc::clone(&h.group), Arc::clone(&n));
        let ind = induce_g_group(&h, &base, &lim).unwrap();
        assert_eq!(ind.tuple_group.order(), 4);
        // generator swaps coordinates: tuple (a, b) = a + 2b -> (b, a)
        assert_eq!(ind.action.apply(1, 1), 2);
        assert_eq!(ind.action.apply(1, 2), 1);
        assert_eq!(ind.action.apply(1, 3), 3);
    }

    #[test]
    fn induced_c4_index_two_swap() {
        let lim = limits();
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let n = Arc::new(FiniteGroup::cyclic(2));
        let base = GAction::trivial(Arc::clone(&h.group), Arc::clone(&n));
        let ind = induce_g_group(&h, &base, &lim).unwrap();
        assert_eq!(ind.tuple_group.order(), 4);
        // the generator 1 of C4 swaps the two coordinates
        assert_eq!(ind.action.apply(1, 1), 2);
        assert_eq!(ind.action.apply(1, 2), 1);
        // the element 2 lies in H and acts trivially (trivial base action)
        for x in 0..4 {
            assert_eq!(ind.action.apply(2, x), x);
        }
    }

    #[test]
    fn wreath_product_orders() {
        let lim = limits();
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let regular = RightGSet::regular(Arc::clone(&c2));
        let w = wreath_product(&c2, &regular, &lim).unwrap();
        assert_eq!(w.group.order(), 8);

        // single fixed point: N x G
        let point = RightGSet::new(Arc::clone(&c2), vec![vec![0], vec![0]]).unwrap();
        let w = wreath_product(&c2, &point, &lim).unwrap();
        assert_eq!(w.group.order(), 4);
        assert!(w.group.is_abelian());

        let s3 = Arc::new(FiniteGroup::named("S3", &lim).unwrap());
        // natural action of S3 on 3 points: elements of S3 are sorted
        // permutations; right action a.g = g^{-1}? No: right action on
        // points via a.g = position after applying g to the point with
        // the convention a.(gh) = (a.g).h. Using a.g = perm_{g^{-1}}(a)
        // wait -- simplest correct right action: a.g = sigma_g^{-1}(a).
        let perms: Vec<Vec<usize>> = (0..6)
            .map(|g| {
                let ginv = s3.inv(g);
                // recover the permutation of points from the group: we
                // rebuild S3's sorted permutation list here
                perm_of_s3(ginv)
            })
            .collect();
        let gset = RightGSet::new(Arc::clone(&s3), perms).unwrap();
        let w = wreath_product(&c2, &gset, &lim).unwrap();
        assert_eq!(w.group.order(), 48);
    }

    /// The i-th permutation of 3 points in lexicographic order, matching
    /// the canonical indexing of S3 built from permutations.
    fn perm_of_s3(i: usize) -> Vec<usize> {
        let mut all: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        all.sort();
        all[i].clone()
    }

    #[test]
    fn twisted_wreath_orders_and_degenerations() {
        let lim = limits();
        // H = G: plain semidirect product of order |N| * |G|
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let inversion: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let full = Subgroup::full(Arc::clone(&c2));
        let base = GAction::new(
            Arc::clone(&full.group),
            Arc::clone(&c3),
            vec![c3.elements().collect(), inversion],
        )
        .unwrap();
        let w = twisted_wreath(&full, &base, &lim).unwrap();
        assert_eq!(w.group.order(), 6);
        assert!(!w.group.is_abelian()); // S3

        // G = C4, H = {0,2}, N = C2 trivial: order 2^2 * 4 = 16
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let base = GAction::trivial(Arc::clone(&h.group), Arc::clone(&c2));
        let w = twisted_wreath(&h, &base, &lim).unwrap();
        assert_eq!(w.group.order(), 16);

        // trivial theta, trivial H: ordinary wreath product over H\G = G
        let triv = Subgroup::trivial(Arc::clone(&c4));
        let base = GAction::trivial(Arc::clone(&triv.group), Arc::clone(&c2));
        let tw = twisted_wreath(&triv, &base, &lim).unwrap();
        let wr = wreath_product(&c2, &RightGSet::regular(Arc::clone(&c4)), &lim).unwrap();
        assert_eq!(tw.group.order(), wr.group.order());
        // with H trivial the coset reps are exactly the elements of G in
        // order, so the two constructions agree on the nose
        assert_eq!(tw.group, wr.group);
    }

    #[test]
    fn ev1_is_h_equivariant_surjection() {
        let lim = limits();
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let inversion: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let base = GAction::new(
            Arc::clone(&h.group),
            Arc::clone(&c3),
            vec![c3.elements().collect(), inversion],
        )
        .unwrap();
        let ind = induce_g_group(&h, &base, &lim).unwrap();
        let mut hit = vec![false; c3.order()];
        for f in ind.tuple_group.elements() {
            hit[ind.ev1(f)] = true;
            // ev1 is a homomorphism
            for f2 in ind.tuple_group.elements() {
                assert_eq!(
                    ind.ev1(ind.tuple_group.mul(f, f2)),
                    c3.mul(ind.ev1(f), ind.ev1(f2))
                );
            }
            // H-equivariance: ev1(h.f) = theta(h)(ev1(f))
            for &m in &h.members {
                assert_eq!(
                    ind.ev1(ind.action.apply(m, f)),
                    base.apply(h.to_sub(m), ind.ev1(f))
                );
            }
        }
        assert!(hit.iter().all(|&b| b));
    }

    #[test]
    fn semidirect_is_exact() {
        let lim = limits();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let inversion: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let act = GAction::new(
            Arc::clone(&c2),
            Arc::clone(&c3),
            vec![c3.elements().collect(), inversion],
        )
        .unwrap();
        let sd = semidirect_product(&act, &lim).unwrap();
        // inject and project are homomorphisms by construction (validated);
        // check exactness: image of inject = kernel of project
        for x in sd.group.elements() {
            let in_kernel = sd.project_g.apply(x) == IDENTITY;
            let in_image = c3.elements().any(|n| sd.inject_n.apply(n) == x);
            assert_eq!(in_kernel, in_image);
        }
    }
}
