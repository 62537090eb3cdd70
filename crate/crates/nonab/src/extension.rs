//! Group extensions 1 -> N -> E -> G -> 1: kernels as outer actions,
//! factor-set realizations, the obstruction class in H^3 of the center,
//! the H^2 torsor action, wreath product type extensions with their
//! degree-2 restriction map, induction of extensions along a subgroup
//! inclusion, section-class transport, and the centerless special case.

use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::{self, CohomologyGroup, GModule};
use crate::action::{
    induce_g_group, power_group, semidirect_product, GAction, SemidirectProduct, TupleCodec,
};
use crate::cohomology::{self, section_classes, Cocycle1, SectionClassSet};
use crate::group::{
    as_inner, automorphism_group, center, compose_images, invert_images, FiniteGroup, GroupMap,
    MapKind, OuterGroup, Subgroup, IDENTITY,
};
use crate::{Error, Limits, Result};

/// A short exact sequence 1 -> N -> E -> G -> 1, fully validated.
#[derive(Clone)]
pub struct Extension {
    pub total: Arc<FiniteGroup>,
    pub kernel_group: Arc<FiniteGroup>,
    pub quotient: Arc<FiniteGroup>,
    pub inject: GroupMap,
    pub project: GroupMap,
    /// total element -> kernel index, for elements in the image of inject.
    inject_lookup: Vec<Option<usize>>,
    /// quotient element -> smallest preimage in the total group.
    preimages: Vec<usize>,
}

impl Extension {
    pub fn new(
        total: Arc<FiniteGroup>,
        kernel_group: Arc<FiniteGroup>,
        quotient: Arc<FiniteGroup>,
        inject: GroupMap,
        project: GroupMap,
    ) -> Result<Self> {
        if inject.source != kernel_group
            || inject.target != total
            || project.source != total
            || project.target != quotient
        {
            return Err(Error::InvalidExtension(
                "map endpoints do not line up".into(),
            ));
        }
        if inject.kind < MapKind::Homomorphism || project.kind < MapKind::Homomorphism {
            return Err(Error::InvalidExtension("maps must be homomorphisms".into()));
        }
        let mut inject_lookup = vec![None; total.order()];
        for n in kernel_group.elements() {
            let e = inject.apply(n);
            if inject_lookup[e].is_some() {
                return Err(Error::InvalidExtension("inject is not injective".into()));
            }
            inject_lookup[e] = Some(n);
        }
        let mut preimages = vec![usize::MAX; quotient.order()];
        for e in total.elements() {
            let g = project.apply(e);
            if preimages[g] == usize::MAX {
                preimages[g] = e;
            }
        }
        if preimages.iter().any(|&p| p == usize::MAX) {
            return Err(Error::InvalidExtension("project is not surjective".into()));
        }
        // exactness: image(inject) = kernel(project), both directions
        for e in total.elements() {
            let in_image = inject_lookup[e].is_some();
            let in_kernel = project.apply(e) == IDENTITY;
            if in_image != in_kernel {
                return Err(Error::InvalidExtension(format!(
                    "exactness fails at element {e}"
                )));
            }
        }
        Ok(Extension {
            total,
            kernel_group,
            quotient,
            inject,
            project,
            inject_lookup,
            preimages,
        })
    }

    /// The canonical (smallest-index) preimage of a quotient element.
    pub fn preimage(&self, g: usize) -> usize {
        self.preimages[g]
    }

    /// Kernel index of a total element in the image of inject.
    pub fn kernel_of_elem(&self, e: usize) -> Option<usize> {
        self.inject_lookup[e]
    }

    pub fn direct_product(
        n: &Arc<FiniteGroup>,
        g: &Arc<FiniteGroup>,
        limits: &Limits,
    ) -> Result<Extension> {
        Extension::from_semidirect(&semidirect_product(
            &GAction::trivial(Arc::clone(g), Arc::clone(n)),
            limits,
        )?)
    }

    pub fn from_semidirect(sd: &SemidirectProduct) -> Result<Extension> {
        Extension::new(
            Arc::clone(&sd.group),
            Arc::clone(&sd.action.space),
            Arc::clone(&sd.action.actor),
            sd.inject_n.clone(),
            sd.project_g.clone(),
        )
    }
}

/// Factor-set data (u, m) realizing an extension on the set N x G with
/// (n,s)(n',t) = (n * u(s)(n') * m(s,t), st).
#[derive(Clone)]
pub struct FactorSystem {
    pub kernel: Arc<FiniteGroup>,
    pub quotient: Arc<FiniteGroup>,
    /// One automorphism image array of N per quotient element; u[1] = id.
    pub u: Vec<Vec<usize>>,
    /// m[s][t] in N, normalized: m[1][t] = m[s][1] = 1.
    pub m: Vec<Vec<usize>>,
}

impl FactorSystem {
    pub fn new(
        kernel: Arc<FiniteGroup>,
        quotient: Arc<FiniteGroup>,
        u: Vec<Vec<usize>>,
        m: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = &kernel;
        let g = &quotient;
        if u.len() != g.order() || m.len() != g.order() {
            return Err(Error::InvalidExtension(
                "factor system has wrong shape".into(),
            ));
        }
        for s in g.elements() {
            GroupMap::new(
                Arc::clone(n),
                Arc::clone(n),
                u[s].clone(),
                MapKind::Automorphism,
            )
            .map_err(|e| Error::InvalidExtension(format!("u({s}): {e}")))?;
        }
        let id: Vec<usize> = n.elements().collect();
        if u[IDENTITY] != id {
            return Err(Error::InvalidExtension("u(1) must be the identity".into()));
        }
        for s in g.elements() {
            if m[s].len() != g.order() || m[s][IDENTITY] != IDENTITY || m[IDENTITY][s] != IDENTITY {
                return Err(Error::InvalidExtension("factor set not normalized".into()));
            }
        }
        // u(s) u(t) = inn(m(s,t)) u(st)
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                for x in n.elements() {
                    if u[s][u[t][x]] != n.conj(m[s][t], u[st][x]) {
                        return Err(Error::InvalidExtension(format!(
                            "lift condition fails at ({s},{t})"
                        )));
                    }
                }
            }
        }
        // u(s)(m(t,r)) m(s,tr) = m(s,t) m(st,r)
        for s in g.elements() {
            for t in g.elements() {
                for r in g.elements() {
                    let lhs = n.mul(u[s][m[t][r]], m[s][g.mul(t, r)]);
                    let rhs = n.mul(m[s][t], m[g.mul(s, t)][r]);
                    if lhs != rhs {
                        return Err(Error::InvalidExtension(format!(
                            "factor set condition fails at ({s},{t},{r})"
                        )));
                    }
                }
            }
        }
        Ok(FactorSystem {
            kernel,
            quotient,
            u,
            m,
        })
    }

    pub fn pair(&self, n: usize, s: usize) -> usize {
        n + self.kernel.order() * s
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.kernel.order(), x / self.kernel.order())
    }

    pub fn to_extension(&self, limits: &Limits) -> Result<Extension> {
        let nn = self.kernel.order();
        let order = nn * self.quotient.order();
        if order > limits.max_group_order {
            return Err(Error::BoundExceeded(format!(
                "extension order {order} exceeds bound {}",
                limits.max_group_order
            )));
        }
        let total = Arc::new(FiniteGroup::from_fn(order, |x, y| {
            let (xn, xs) = (x % nn, x / nn);
            let (yn, yt) = (y % nn, y / nn);
            let n = self
                .kernel
                .mul(self.kernel.mul(xn, self.u[xs][yn]), self.m[xs][yt]);
            n + nn * self.quotient.mul(xs, yt)
        })?);
        let inject = GroupMap::new(
            Arc::clone(&self.kernel),
            Arc::clone(&total),
            self.kernel.elements().collect(),
            MapKind::Homomorphism,
        )?;
        let project = GroupMap::new(
            Arc::clone(&total),
            Arc::clone(&self.quotient),
            (0..order).map(|x| x / nn).collect(),
            MapKind::Homomorphism,
        )?;
        Extension::new(
            total,
            Arc::clone(&self.kernel),
            Arc::clone(&self.quotient),
            inject,
            project,
        )
    }

    /// Read off a factor system from an extension using the canonical
    /// (smallest-preimage) set-theoretic section.
    pub fn from_extension(e: &Extension) -> Result<FactorSystem> {
        let n = &e.kernel_group;
        let g = &e.quotient;
        let t = &e.total;
        let sigma: Vec<usize> = g.elements().map(|s| e.preimage(s)).collect();
        debug_assert_eq!(sigma[IDENTITY], IDENTITY);
        let mut u = Vec::with_capacity(g.order());
        for s in g.elements() {
            let images: Vec<usize> = n
                .elements()
                .map(|x| {
                    let conj = t.conj(sigma[s], e.inject.apply(x));
                    e.kernel_of_elem(conj).expect("kernel is normal")
                })
                .collect();
            u.push(images);
        }
        let mut m = Vec::with_capacity(g.order());
        for s in g.elements() {
            let row: Vec<usize> = g
                .elements()
                .map(|r| {
                    let defect = t.mul(t.mul(sigma[s], sigma[r]), t.inv(sigma[g.mul(s, r)]));
                    e.kernel_of_elem(defect)
                        .expect("section defect is in the kernel")
                })
                .collect();
            m.push(row);
        }
        FactorSystem::new(Arc::clone(n), Arc::clone(g), u, m)
    }
}

/// An outer action rho: G -> Out(N), stored as one chosen automorphism
/// representative per group element (reps[1] = id), together with the
/// honest action it induces on the center of N.
#[derive(Clone)]
pub struct OuterKernel {
    pub source: Arc<FiniteGroup>,
    pub space: Arc<FiniteGroup>,
    /// Chosen automorphism representative per source element.
    pub reps: Vec<Vec<usize>>,
    pub center: Subgroup,
    /// The center character chi, acting on the abstract center group.
    pub center_action: GAction,
}

/// All c in N with conjugation by c equal to the given automorphism.
fn inner_witnesses(n: &FiniteGroup, images: &[usize]) -> Vec<usize> {
    n.elements()
        .filter(|&c| n.elements().all(|x| images[x] == n.conj(c, x)))
        .collect()
}

impl OuterKernel {
    pub fn new(
        source: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        mut reps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if reps.len() != source.order() {
            return Err(Error::InvalidMap(
                "one representative per element required".into(),
            ));
        }
        for (g, rep) in reps.iter().enumerate() {
            GroupMap::new(
                Arc::clone(&space),
                Arc::clone(&space),
                rep.clone(),
                MapKind::Automorphism,
            )
            .map_err(|e| Error::InvalidMap(format!("rep of {g}: {e}")))?;
        }
        if as_inner(&space, &reps[IDENTITY]).is_none() {
            return Err(Error::InvalidMap("rep of 1 must be inner".into()));
        }
        reps[IDENTITY] = space.elements().collect();
        // homomorphism modulo inner automorphisms
        for s in source.elements() {
            for t in source.elements() {
                let st = source.mul(s, t);
                let composite = compose_images(&reps[s], &reps[t]);
                let defect = compose_images(&composite, &invert_images(&reps[st]));
                if as_inner(&space, &defect).is_none() {
                    return Err(Error::InvalidMap(format!(
                        "outer action fails to compose at ({s},{t})"
                    )));
                }
            }
        }
        let center = center(&space);
        // chi is rep-independent: inner automorphisms fix the center
        let theta: Vec<Vec<usize>> = source
            .elements()
            .map(|g| {
                (0..center.order())
                    .map(|z| center.to_sub(reps[g][center.to_ambient(z)]))
                    .collect()
            })
            .collect();
        let center_action = GAction::new(Arc::clone(&source), Arc::clone(&center.group), theta)?;
        Ok(OuterKernel {
            source,
            space,
            reps,
            center,
            center_action,
        })
    }

    /// True if the two kernels agree pointwise as outer actions.
    pub fn outer_equal(&self, other: &OuterKernel) -> bool {
        if self.source != other.source || self.space != other.space {
            return false;
        }
        self.source.elements().all(|g| {
            let defect = compose_images(&self.reps[g], &invert_images(&other.reps[g]));
            as_inner(&self.space, &defect).is_some()
        })
    }

    /// Is the automorphism assignment an honest homomorphism (not just
    /// modulo inner)?
    pub fn is_honest(&self) -> bool {
        self.source.elements().all(|s| {
            self.source.elements().all(|t| {
                let st = self.source.mul(s, t);
                compose_images(&self.reps[s], &self.reps[t]) == self.reps[st]
            })
        })
    }
}

/// The outer kernel of an extension: conjugation by preimages.
pub fn kernel_of_extension(e: &Extension) -> Result<OuterKernel> {
    let g = &e.quotient;
    let n = &e.kernel_group;
    let t = &e.total;
    let mut reps = Vec::with_capacity(g.order());
    for s in g.elements() {
        let pre = e.preimage(s);
        let images: Vec<usize> = n
            .elements()
            .map(|x| {
                e.kernel_of_elem(t.conj(pre, e.inject.apply(x)))
                    .ok_or_else(|| Error::InvalidExtension("kernel is not normal".into()))
            })
            .collect::<Result<_>>()?;
        // any other preimage must induce the same outer class
        for other in t.elements().filter(|&x| e.project.apply(x) == s) {
            let alt: Vec<usize> = n
                .elements()
                .map(|x| e.kernel_of_elem(t.conj(other, e.inject.apply(x))).unwrap())
                .collect();
            let defect = compose_images(&alt, &invert_images(&images));
            if as_inner(n, &defect).is_none() {
                return Err(Error::InvalidExtension(
                    "preimage choice changed the outer class".into(),
                ));
            }
        }
        reps.push(images);
    }
    OuterKernel::new(Arc::clone(g), Arc::clone(n), reps)
}

/// Trivial outer kernel (every element acts by the identity class).
pub fn trivial_kernel(source: &Arc<FiniteGroup>, space: &Arc<FiniteGroup>) -> Result<OuterKernel> {
    let id: Vec<usize> = space.elements().collect();
    OuterKernel::new(
        Arc::clone(source),
        Arc::clone(space),
        vec![id; source.order()],
    )
}

/// Conjugacy classes of homomorphic sections of project: E -> G.
pub fn sections_of_extension(e: &Extension, limits: &Limits) -> Result<SectionClassSet> {
    section_classes(
        &e.total,
        &e.project.images,
        &e.quotient,
        &e.inject.images,
        limits,
    )
}

/// The chosen inner-witness function n0 with u(s)u(t) = inn(n0(s,t)) u(st),
/// taking the smallest witness (so n0 is normalized).
fn lift_defect(rho: &OuterKernel) -> Result<Vec<Vec<usize>>> {
    let g = &rho.source;
    let n = &rho.space;
    let mut n0 = Vec::with_capacity(g.order());
    for s in g.elements() {
        let row: Vec<usize> = g
            .elements()
            .map(|t| {
                let st = g.mul(s, t);
                let composite = compose_images(&rho.reps[s], &rho.reps[t]);
                let defect = compose_images(&composite, &invert_images(&rho.reps[st]));
                as_inner(n, &defect)
                    .ok_or_else(|| Error::InvalidMap("kernel composition defect not inner".into()))
            })
            .collect::<Result<_>>()?;
        n0.push(row);
    }
    debug_assert!(g.elements().all(|t| n0[IDENTITY][t] == IDENTITY));
    debug_assert!(g.elements().all(|s| n0[s][IDENTITY] == IDENTITY));
    Ok(n0)
}

/// The obstruction of an outer kernel: the class in H^3(G, Z(chi)) of the
/// associativity defect z(s,t,r) with
/// u(s)(n0(t,r)) n0(s,tr) = z(s,t,r) n0(s,t) n0(st,r).
pub struct Obstruction {
    pub h3: CohomologyGroup,
    /// The defect 3-cocycle as a cochain vector over the center module.
    pub defect: Vec<i64>,
    /// Class label of the defect (one entry per invariant factor of H^3).
    pub label: Vec<i64>,
}

impl Obstruction {
    pub fn is_zero(&self) -> bool {
        self.label.iter().all(|&v| v == 0)
    }
}

pub fn obstruction_delta(rho: &OuterKernel, limits: &Limits) -> Result<Obstruction> {
    let module = GModule::new(rho.center_action.clone())?;
    let h3 = abelian::cohomology(&module, 3, limits)?;
    let defect = defect_cocycle(rho, &module, &lift_defect(rho)?)?;
    if !h3.is_cocycle(&defect) {
        return Err(Error::InvalidMap(
            "obstruction defect is not a 3-cocycle".into(),
        ));
    }
    let label = h3.class_of(&defect)?;
    Ok(Obstruction { h3, defect, label })
}

/// The defect 3-cochain for a given witness n0, in center-module coords.
fn defect_cocycle(rho: &OuterKernel, module: &GModule, n0: &[Vec<usize>]) -> Result<Vec<i64>> {
    let g = &rho.source;
    let n = &rho.space;
    module.cochain_from_fn(3, |tuple| {
        let (s, t, r) = (tuple[0], tuple[1], tuple[2]);
        let lhs = n.mul(rho.reps[s][n0[t][r]], n0[s][g.mul(t, r)]);
        let rhs = n.mul(n0[s][t], n0[g.mul(s, t)][r]);
        let z = n.mul(lhs, n.inv(rhs));
        if !rho.center.contains(z) {
            panic!("obstruction defect left the center");
        }
        rho.center.to_sub(z)
    })
}

/// Every extension with the given kernel, one per H^2(G, Z(chi)) class,
/// grouped into extension-isomorphism classes. Empty iff obstructed.
pub struct ExtensionSet {
    pub kernel: OuterKernel,
    /// Present unless the set was built with the classification skipped.
    pub obstruction: Option<Obstruction>,
    pub h2: CohomologyGroup,
    /// H^2 class labels, aligned with `systems` and `extensions`.
    pub labels: Vec<Vec<i64>>,
    pub systems: Vec<FactorSystem>,
    pub extensions: Vec<Extension>,
    /// Indices into `extensions`, grouped by extension isomorphism.
    pub iso_classes: Vec<Vec<usize>>,
}

pub fn extensions_with_kernel(rho: &OuterKernel, limits: &Limits) -> Result<ExtensionSet> {
    extension_set(rho, limits, true)
}

/// As `extensions_with_kernel`, but without classifying the obstruction
/// class in H^3: extendibility is decided by direct solvability of the
/// factor-set equation, which avoids the expensive degree-3 cohomology.
pub fn extension_classes_only(rho: &OuterKernel, limits: &Limits) -> Result<ExtensionSet> {
    extension_set(rho, limits, false)
}

fn extension_set(
    rho: &OuterKernel,
    limits: &Limits,
    classify_obstruction: bool,
) -> Result<ExtensionSet> {
    let module = GModule::new(rho.center_action.clone())?;
    let h2 = abelian::cohomology(&module, 2, limits)?;
    let n0 = lift_defect(rho)?;
    let defect = defect_cocycle(rho, &module, &n0)?;
    let obstruction = if classify_obstruction {
        Some(obstruction_delta(rho, limits)?)
    } else {
        None
    };
    let mut set = ExtensionSet {
        kernel: rho.clone(),
        obstruction,
        h2,
        labels: Vec::new(),
        systems: Vec::new(),
        extensions: Vec::new(),
        iso_classes: Vec::new(),
    };
    // solve delta(z) = -defect over C^2; solvable iff the class vanishes
    let neg: Vec<i64> = defect
        .iter()
        .zip(&module.row_moduli(3))
        .map(|(&v, &m)| (-v).rem_euclid(m))
        .collect();
    let d2 = module.differential(2, limits)?;
    let base = crate::snf::solve_with_moduli(&d2, &module.row_moduli(3), &neg).map(|x| {
        let moduli = module.row_moduli(2);
        x.iter()
            .zip(&moduli)
            .map(|(&v, &m)| v.rem_euclid(m))
            .collect::<Vec<i64>>()
    });
    if let Some(obs) = &set.obstruction {
        if base.is_none() != !obs.is_zero() {
            return Err(Error::Mismatch(
                "obstruction class and factor-set solvability disagree".into(),
            ));
        }
    }
    let Some(z0) = base else { return Ok(set) };
    let g = &rho.source;
    let n = &rho.space;
    let to_n = |zc: usize| rho.center.to_ambient(zc);
    for label in set.h2.class_labels()? {
        let w = set.h2.representative(&label);
        let m: Vec<Vec<usize>> = g
            .elements()
            .map(|s| {
                g.elements()
                    .map(|t| {
                        let zpart = module.cochain_get(&z0, &[s, t]);
                        let wpart = module.cochain_get(&w, &[s, t]);
                        n.mul(n.mul(n0[s][t], to_n(zpart)), to_n(wpart))
                    })
                    .collect()
            })
            .collect();
        let system = FactorSystem::new(Arc::clone(n), Arc::clone(g), rho.reps.clone(), m)?;
        let ext = system.to_extension(limits)?;
        set.labels.push(label);
        set.systems.push(system);
        set.extensions.push(ext);
    }
    // group by extension isomorphism
    let mut assigned = vec![usize::MAX; set.extensions.len()];
    for i in 0..set.extensions.len() {
        if assigned[i] != usize::MAX {
            continue;
        }
        let cls = set.iso_classes.len();
        let mut members = vec![i];
        assigned[i] = cls;
        for j in i + 1..set.extensions.len() {
            if assigned[j] == usize::MAX
                && extension_isomorphic(&set.extensions[i], &set.extensions[j], limits)?.is_some()
            {
                assigned[j] = cls;
                members.push(j);
            }
        }
        set.iso_classes.push(members);
    }
    Ok(set)
}

/// Isomorphism of extensions inducing the identity on both N and G, if
/// one exists. Reduces to a factor-set comparison: phi(n, s) = (n c(s), s)
/// with inn(c(s)) = u1(s) u2(s)^{-1} and the m-compatibility equation.
pub fn extension_isomorphic(
    e1: &Extension,
    e2: &Extension,
    limits: &Limits,
) -> Result<Option<GroupMap>> {
    if e1.kernel_group != e2.kernel_group || e1.quotient != e2.quotient {
        return Err(Error::Mismatch("extensions have different ends".into()));
    }
    let n = &e1.kernel_group;
    let g = &e1.quotient;
    let f1 = FactorSystem::from_extension(e1)?;
    let f2 = FactorSystem::from_extension(e2)?;
    let c = if n.is_abelian() {
        // u must agree exactly; m-difference must be a coboundary
        if f1.u != f2.u {
            return Ok(None);
        }
        let theta: Vec<Vec<usize>> = f1.u.clone();
        let action = GAction::new(Arc::clone(g), Arc::clone(n), theta)?;
        let module = GModule::new(action)?;
        let diff =
            module.cochain_from_fn(2, |t| n.mul(f1.m[t[0]][t[1]], n.inv(f2.m[t[0]][t[1]])))?;
        let d1 = module.differential(1, limits)?;
        let Some(cvec) = crate::snf::solve_with_moduli(&d1, &module.row_moduli(2), &diff) else {
            return Ok(None);
        };
        let mut c = vec![IDENTITY; g.order()];
        for s in g.elements().skip(1) {
            c[s] = module.cochain_get(&cvec, &[s]);
        }
        Some(c)
    } else {
        // candidates per s: inner witnesses of u1(s) u2(s)^{-1}
        let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(g.order());
        for s in g.elements() {
            let defect = compose_images(&f1.u[s], &invert_images(&f2.u[s]));
            let wits = if s == IDENTITY {
                vec![IDENTITY]
            } else {
                inner_witnesses(n, &defect)
            };
            if wits.is_empty() {
                return Ok(None);
            }
            candidates.push(wits);
        }
        let space: u64 = candidates
            .iter()
            .map(|c| c.len() as u64)
            .try_fold(1u64, u64::checked_mul)
            .ok_or_else(|| Error::BoundExceeded("isomorphism search overflow".into()))?;
        if space > limits.max_search_space {
            return Err(Error::BoundExceeded("isomorphism search too large".into()));
        }
        let mut choice = vec![0usize; g.order()];
        let mut found = None;
        'outer: loop {
            let c: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, v)| v[i]).collect();
            // m1(s,t) c(st) = c(s) u2(s)(c(t)) m2(s,t)
            let ok = g.elements().all(|s| {
                g.elements().all(|t| {
                    let lhs = n.mul(f1.m[s][t], c[g.mul(s, t)]);
                    let rhs = n.mul(n.mul(c[s], f2.u[s][c[t]]), f2.m[s][t]);
                    lhs == rhs
                })
            });
            if ok {
                found = Some(c);
                break;
            }
            let mut pos = 0;
            loop {
                if pos == g.order() {
                    break 'outer;
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
        found
    };
    let Some(c) = c else { return Ok(None) };
    // assemble phi on the original realizations: x = i1(n) sigma1(s) maps
    // to i2(n c(s)) sigma2(s)
    let images: Vec<usize> = e1
        .total
        .elements()
        .map(|x| {
            let s = e1.project.apply(x);
            let npart = e1
                .kernel_of_elem(e1.total.mul(x, e1.total.inv(e1.preimage(s))))
                .expect("exactness");
            e2.total
                .mul(e2.inject.apply(n.mul(npart, c[s])), e2.preimage(s))
        })
        .collect();
    let phi = GroupMap::new(
        Arc::clone(&e1.total),
        Arc::clone(&e2.total),
        images,
        MapKind::Isomorphism,
    )
    .map_err(|e| Error::Mismatch(format!("isomorphism assembly failed: {e}")))?;
    // identity on N and on G
    for x in e1.kernel_group.elements() {
        if phi.apply(e1.inject.apply(x)) != e2.inject.apply(x) {
            return Err(Error::Mismatch("isomorphism does not fix N".into()));
        }
    }
    for x in e1.total.elements() {
        if e2.project.apply(phi.apply(x)) != e1.project.apply(x) {
            return Err(Error::Mismatch("isomorphism does not fix G".into()));
        }
    }
    Ok(Some(phi))
}

/// Quotient of `g` by a normal subgroup given as a sorted member list.
/// Returns (quotient, class index per element, representative per class).
pub fn quotient_group(
    g: &Arc<FiniteGroup>,
    normal: &[usize],
) -> Result<(Arc<FiniteGroup>, Vec<usize>, Vec<usize>)> {
    let sub = Subgroup::new(Arc::clone(g), normal.to_vec())?;
    if !sub.is_normal() {
        return Err(Error::InvalidGroup("subgroup is not normal".into()));
    }
    // right cosets with smallest-element representatives; identity coset
    // contains 0 and therefore sorts first
    let mut rep_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if rep_of[x] != usize::MAX {
            continue;
        }
        let coset: Vec<usize> = normal.iter().map(|&h| g.mul(h, x)).collect();
        let rep = *coset.iter().min().unwrap();
        for &y in &coset {
            rep_of[y] = rep;
        }
        reps.push(rep);
    }
    reps.sort_unstable();
    let index_of: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let class_of: Vec<usize> = rep_of.iter().map(|&r| index_of[&r]).collect();
    let quot = Arc::new(FiniteGroup::from_fn(reps.len(), |a, b| {
        class_of[g.mul(reps[a], reps[b])]
    })?);
    Ok((quot, class_of, reps))
}

/// A wreath product type kernel: an outer action on M = N^{[G:H]} whose
/// representatives permute-and-twist coordinates along right translation
/// of the coset space, together with the lift data.
#[derive(Clone)]
pub struct WreathKernel {
    pub base: OuterKernel,
    pub subgroup: Subgroup,
    pub base_space: Arc<FiniteGroup>,
    pub out: OuterGroup,
    /// Per source element: outer class of the coordinate twist, per slot.
    pub lift: Vec<Vec<usize>>,
    /// Per source element: the coordinate translation i -> pi_g(i).
    pub perms: Vec<Vec<usize>>,
}

impl WreathKernel {
    /// The kernel-level restriction: outer classes of the slot-0 twists
    /// over the subgroup.
    pub fn sh_kernel(&self) -> Vec<usize> {
        (0..self.subgroup.order())
            .map(|h| self.lift[self.subgroup.to_ambient(h)][0])
            .collect()
    }
}

/// Decide whether rho (an outer action on a group presented as the power
/// N^{[G:H]}) is of wreath product type over H, and build the unique lift
/// if so. Refusal is the Ok(None) value.
pub fn detect_wreath_kernel(
    rho: &OuterKernel,
    h: &Subgroup,
    n: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Option<WreathKernel>> {
    if rho.source != h.ambient {
        return Err(Error::Mismatch(
            "kernel source differs from the ambient group".into(),
        ));
    }
    let k = h.index();
    let (m_group, codec) = power_group(n, k, limits)?;
    if rho.space != m_group {
        return Err(Error::Mismatch(
            "kernel space is not the coordinate power group".into(),
        ));
    }
    let out = automorphism_group(n, limits)?;
    let g = &rho.source;
    let mm = m_group.order();
    let perms: Vec<Vec<usize>> = g
        .elements()
        .map(|s| {
            (0..k)
                .map(|i| {
                    let yi = h.coset_reps[i];
                    let (_, y2) = h.coset_factorize(g.mul(yi, s));
                    h.rep_pos(y2)
                })
                .collect()
        })
        .collect();
    let mut lift: Vec<Vec<usize>> = Vec::with_capacity(g.order());
    for s in g.elements() {
        let pi = &perms[s];
        let mut found: Option<Vec<usize>> = None;
        for c in 0..mm {
            // candidate psi = inn(c) o rep_s
            let psi: Vec<usize> = (0..mm).map(|x| m_group.conj(c, rho.reps[s][x])).collect();
            // extract the would-be coordinate maps from basis tuples
            let mut phis: Vec<Vec<usize>> = vec![vec![0; n.order()]; k];
            for i in 0..k {
                for x in n.elements() {
                    let input = codec.encode(
                        &(0..k)
                            .map(|j| if j == pi[i] { x } else { IDENTITY })
                            .collect::<Vec<_>>(),
                    );
                    phis[i][x] = codec.decode(psi[input])[i];
                }
            }
            // verify the product form on every tuple
            let matches = (0..mm).all(|f| {
                let coords = codec.decode(f);
                let image: Vec<usize> = (0..k).map(|i| phis[i][coords[pi[i]]]).collect();
                psi[f] == codec.encode(&image)
            });
            if !matches {
                continue;
            }
            let classes: Option<Vec<usize>> =
                phis.iter().map(|p| out.out_class_of_images(p)).collect();
            let Some(classes) = classes else { continue };
            match &found {
                None => found = Some(classes),
                Some(prev) if *prev != classes => {
                    return Err(Error::Mismatch(
                        "wreath lift is not unique; invariant violated".into(),
                    ));
                }
                _ => {}
            }
        }
        match found {
            None => return Ok(None),
            Some(classes) => lift.push(classes),
        }
    }
    // the lift must be a homomorphism into (Out(N), 1) wr_H G
    for s in g.elements() {
        for t in g.elements() {
            let st = g.mul(s, t);
            for i in 0..k {
                let a = &out.auts[out.out_reps[lift[s][i]]];
                let b = &out.auts[out.out_reps[lift[t][perms[s][i]]]];
                let composite = compose_images(a, b);
                if out.out_class_of_images(&composite) != Some(lift[st][i]) {
                    return Err(Error::Mismatch(
                        "wreath lift fails to be a homomorphism".into(),
                    ));
                }
            }
        }
    }
    Ok(Some(WreathKernel {
        base: rho.clone(),
        subgroup: h.clone(),
        base_space: Arc::clone(n),
        out,
        lift,
        perms,
    }))
}

/// The degree-2 restriction of a wreath product type extension: restrict
/// to the preimage of H and push out along evaluation at the identity
/// coset. Returns an extension of H (as an abstract group) by N.
pub fn sh2(
    e: &Extension,
    h: &Subgroup,
    n: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Extension> {
    let rho = kernel_of_extension(e)?;
    if detect_wreath_kernel(&rho, h, n, limits)?.is_none() {
        return Err(Error::InvalidExtension(
            "not a wreath product type extension over this subgroup".into(),
        ));
    }
    let codec = TupleCodec {
        base: n.order(),
        len: h.index(),
    };
    // restrict to the preimage of H
    let members: Vec<usize> = e
        .total
        .elements()
        .filter(|&x| h.contains(e.project.apply(x)))
        .collect();
    let restricted = Subgroup::new(Arc::clone(&e.total), members)?;
    let eh = Arc::clone(&restricted.group);
    // kernel of ev_1 inside the restriction
    let ev1_kernel: Vec<usize> = (0..eh.order())
        .filter(|&x| {
            let amb = restricted.to_ambient(x);
            match e.kernel_of_elem(amb) {
                Some(f) => codec.decode(f)[0] == IDENTITY,
                None => false,
            }
        })
        .collect();
    let (quot, class_of, reps) = quotient_group(&eh, &ev1_kernel)?;
    let inject_images: Vec<usize> = n
        .elements()
        .map(|x| {
            let tuple = codec.encode(
                &(0..codec.len)
                    .map(|i| if i == 0 { x } else { IDENTITY })
                    .collect::<Vec<_>>(),
            );
            class_of[restricted.to_sub(e.inject.apply(tuple))]
        })
        .collect();
    let project_images: Vec<usize> = reps
        .iter()
        .map(|&r| h.to_sub(e.project.apply(restricted.to_ambient(r))))
        .collect();
    let inject = GroupMap::new(
        Arc::clone(n),
        Arc::clone(&quot),
        inject_images,
        MapKind::Homomorphism,
    )?;
    let project = GroupMap::new(
        Arc::clone(&quot),
        Arc::clone(&h.group),
        project_images,
        MapKind::Homomorphism,
    )?;
    Extension::new(quot, Arc::clone(n), Arc::clone(&h.group), inject, project)
}

/// An induced extension together with the data needed to transport
/// sections back and forth.
pub struct InducedExtension {
    pub extension: Extension,
    pub system: FactorSystem,
    pub f_system: FactorSystem,
    pub subgroup: Subgroup,
    pub codec: TupleCodec,
}

/// Induce an extension of H by N along H <= G: a wreath product type
/// extension of G by N^{[G:H]} whose degree-2 restriction recovers F.
/// Built by cochain transport on factor sets; validated by a round trip.
pub fn induce_extension(f: &Extension, h: &Subgroup, limits: &Limits) -> Result<InducedExtension> {
    if f.quotient != h.group {
        return Err(Error::Mismatch(
            "extension quotient differs from the subgroup".into(),
        ));
    }
    let n = &f.kernel_group;
    let g = &h.ambient;
    let k = h.index();
    let fs = FactorSystem::from_extension(f)?;
    let (m_group, codec) = power_group(n, k, limits)?;
    // u_E(s) acts on a tuple slotwise: slot i reads slot pos(y_{y_i s})
    // through u_F(gamma_{y_i s})
    let mut u = Vec::with_capacity(g.order());
    let mut moves: Vec<Vec<(usize, usize)>> = Vec::with_capacity(g.order());
    for s in g.elements() {
        let mv: Vec<(usize, usize)> = (0..k)
            .map(|i| {
                let (gamma, y2) = h.coset_factorize(g.mul(h.coset_reps[i], s));
                (h.rep_pos(y2), h.to_sub(gamma))
            })
            .collect();
        let images: Vec<usize> = (0..m_group.order())
            .map(|x| {
                let coords = codec.decode(x);
                let out: Vec<usize> = mv
                    .iter()
                    .map(|&(src, gam)| fs.u[gam][coords[src]])
                    .collect();
                codec.encode(&out)
            })
            .collect();
        u.push(images);
        moves.push(mv);
    }
    // m_E(s,t) slot i = m_F(gamma_{y_i s}, gamma_{y_{y_i s} t})
    let mut m = Vec::with_capacity(g.order());
    for s in g.elements() {
        let row: Vec<usize> = g
            .elements()
            .map(|t| {
                let coords: Vec<usize> = (0..k)
                    .map(|i| {
                        let (g1, y2) = h.coset_factorize(g.mul(h.coset_reps[i], s));
                        let (g2, _) = h.coset_factorize(g.mul(y2, t));
                        fs.m[h.to_sub(g1)][h.to_sub(g2)]
                    })
                    .collect();
                codec.encode(&coords)
            })
            .collect();
        m.push(row);
    }
    let system = FactorSystem::new(Arc::clone(&m_group), Arc::clone(g), u, m)?;
    let extension = system.to_extension(limits)?;
    // round-trip validation: sh^2 must recover F up to extension iso
    let back = sh2(&extension, h, n, limits)?;
    if extension_isomorphic(&back, f, limits)?.is_none() {
        return Err(Error::InvalidExtension(
            "induction round trip failed; implementation bug".into(),
        ));
    }
    Ok(InducedExtension {
        extension,
        system,
        f_system: fs,
        subgroup: h.clone(),
        codec,
    })
}

/// Search fallback for induction: enumerate wreath product type extension
/// candidates with the matching kernel and filter by sh^2 isomorphism.
/// Exists to cross-check the transport construction.
pub fn induce_extension_by_search(
    f: &Extension,
    h: &Subgroup,
    limits: &Limits,
) -> Result<Vec<Extension>> {
    let n = &f.kernel_group;
    let mut found = Vec::new();
    for (rho, _) in wreath_kernels(h, n, limits)? {
        let set = extension_classes_only(&rho, limits)?;
        for cls in &set.iso_classes {
            let e = &set.extensions[cls[0]];
            let back = sh2(e, h, n, limits)?;
            if extension_isomorphic(&back, f, limits)?.is_some() {
                found.push(e.clone());
            }
        }
    }
    Ok(found)
}

/// Section transport along induction: explicit mutually inverse maps
/// between section classes of F and of E = Ind(F).
pub struct SectionTransport {
    pub f_classes: SectionClassSet,
    pub e_classes: SectionClassSet,
    /// E class index -> F class index.
    pub forward: Vec<usize>,
    /// F class index -> E class index.
    pub backward: Vec<usize>,
}

pub fn transport_sections(
    f: &Extension,
    ind: &InducedExtension,
    limits: &Limits,
) -> Result<SectionTransport> {
    let h = &ind.subgroup;
    let g = &h.ambient;
    let n = &f.kernel_group;
    let e = &ind.extension;
    let f_classes = sections_of_extension(f, limits)?;
    let e_classes = sections_of_extension(e, limits)?;
    if f_classes.classes.len() != e_classes.classes.len() {
        return Err(Error::Mismatch(
            "section class counts differ across induction".into(),
        ));
    }
    // forward: evaluate the kernel part at slot 0 and reassemble in F
    let mut forward = Vec::with_capacity(e_classes.classes.len());
    for &ei in &e_classes.classes {
        let se = &e_classes.sections[ei];
        let images: Vec<usize> = (0..h.order())
            .map(|hi| {
                let x = se[h.to_ambient(hi)];
                let (mpart, gpart) = ind.system.split(x);
                debug_assert_eq!(gpart, h.to_ambient(hi));
                let npart = ind.codec.decode(mpart)[0];
                f.total.mul(f.inject.apply(npart), f.preimage(hi))
            })
            .collect();
        let idx = f_classes
            .section_index(&images)
            .ok_or_else(|| Error::Mismatch("transported section is not a section".into()))?;
        forward.push(f_classes.class_of[idx]);
    }
    // backward: reduce to a 1-cocycle against a fixed splitting and apply
    // the degree-1 induction inverse
    let mut backward = vec![usize::MAX; f_classes.classes.len()];
    if !f_classes.classes.is_empty() {
        let sigma0 = f_classes.sections[f_classes.classes[0]].clone();
        // c_h: kernel part of sigma0 against the canonical preimages
        let c: Vec<usize> = (0..h.order())
            .map(|hi| {
                f.kernel_of_elem(f.total.mul(sigma0[hi], f.total.inv(f.preimage(hi))))
                    .expect("section defect is in the kernel")
            })
            .collect();
        // honest action of H on N via conjugation along sigma0
        let theta: Vec<Vec<usize>> = (0..h.order())
            .map(|hi| {
                n.elements()
                    .map(|x| {
                        f.kernel_of_elem(f.total.conj(sigma0[hi], f.inject.apply(x)))
                            .expect("kernel is normal")
                    })
                    .collect()
            })
            .collect();
        let act = GAction::new(Arc::clone(&h.group), Arc::clone(n), theta)?;
        let ind_theta = induce_g_group(h, &act, limits)?;
        for (fcls, &fi) in f_classes.classes.iter().enumerate() {
            let sf = &f_classes.sections[fi];
            // a_h = s(h) sigma0(h)^{-1}, a 1-cocycle for the theta action
            let a_vals: Vec<usize> = (0..h.order())
                .map(|hi| {
                    f.kernel_of_elem(f.total.mul(sf[hi], f.total.inv(sigma0[hi])))
                        .expect("section difference is in the kernel")
                })
                .collect();
            let a = Cocycle1::new(act.clone(), a_vals)?;
            let b = cohomology::shapiro1_inverse(&ind_theta, &a)?;
            // assemble the E-section s(g) = (b_g * C_g, g) with
            // C_g slot i = c at gamma_{y_i g}
            let tg = &ind_theta.tuple_group;
            let images: Vec<usize> = g
                .elements()
                .map(|s| {
                    let coords: Vec<usize> = (0..h.index())
                        .map(|i| {
                            let (gamma, _) = h.coset_factorize(g.mul(h.coset_reps[i], s));
                            c[h.to_sub(gamma)]
                        })
                        .collect();
                    let c_s = ind.codec.encode(&coords);
                    ind.system.pair(tg.mul(b.values[s], c_s), s)
                })
                .collect();
            let idx = e_classes.section_index(&images).ok_or_else(|| {
                Error::Mismatch("backward transported section is not a section".into())
            })?;
            backward[fcls] = e_classes.class_of[idx];
        }
    }
    // mutually inverse on classes
    for (fcls, &ecls) in backward.iter().enumerate() {
        if forward[ecls] != fcls {
            return Err(Error::Mismatch(
                "section transport maps fail to invert".into(),
            ));
        }
    }
    let mut seen = vec![false; f_classes.classes.len()];
    for &fc in &forward {
        if seen[fc] {
            return Err(Error::Mismatch(
                "forward section transport is not injective".into(),
            ));
        }
        seen[fc] = true;
    }
    Ok(SectionTransport {
        f_classes,
        e_classes,
        forward,
        backward,
    })
}

/// The H^2(G, Z(chi)) action on extensions: fibre product with the
/// central extension of the class, then quotient by the antidiagonal
/// copy of the center.
pub fn act_h2_on_extension(
    h2: &CohomologyGroup,
    label: &[i64],
    e: &Extension,
    limits: &Limits,
) -> Result<Extension> {
    let rho = kernel_of_extension(e)?;
    if h2.module.action != rho.center_action {
        return Err(Error::Mismatch(
            "cohomology module does not match the center character".into(),
        ));
    }
    let z = &rho.center_action.space;
    let g = &e.quotient;
    let w = h2.representative(label);
    // the central extension Z_a of G by Z realized by the cocycle
    let chi_theta: Vec<Vec<usize>> = rho.center_action.theta.clone();
    let mz: Vec<Vec<usize>> = g
        .elements()
        .map(|s| {
            g.elements()
                .map(|t| h2.module.cochain_get(&w, &[s, t]))
                .collect()
        })
        .collect();
    let central = FactorSystem::new(Arc::clone(z), Arc::clone(g), chi_theta, mz)?;
    let zext = central.to_extension(limits)?;
    // fibre product over G inside E x Z_a
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in e.total.elements() {
        for b in zext.total.elements() {
            if e.project.apply(a) == zext.project.apply(b) {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_unstable();
    if pairs.len() > limits.max_group_order {
        return Err(Error::BoundExceeded(
            "fibre product exceeds group bound".into(),
        ));
    }
    let index_of: HashMap<(usize, usize), usize> = pairs
        .iter()
        .copied()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    debug_assert_eq!(pairs[0], (IDENTITY, IDENTITY));
    let et = Arc::clone(&e.total);
    let zt = Arc::clone(&zext.total);
    let fibre = Arc::new(FiniteGroup::from_fn(pairs.len(), |x, y| {
        let (a1, b1) = pairs[x];
        let (a2, b2) = pairs[y];
        index_of[&(et.mul(a1, a2), zt.mul(b1, b2))]
    })?);
    // antidiagonal central subgroup (i_E(zeta), i_Z(-zeta))
    let anti: Vec<usize> = (0..z.order())
        .map(|zeta| {
            let a = e.inject.apply(rho.center.to_ambient(zeta));
            let b = zext.inject.apply(z.inv(zeta));
            index_of[&(a, b)]
        })
        .collect();
    let mut anti_sorted = anti.clone();
    anti_sorted.sort_unstable();
    let (quot, class_of, reps) = quotient_group(&fibre, &anti_sorted)?;
    let inject_images: Vec<usize> = e
        .kernel_group
        .elements()
        .map(|x| class_of[index_of[&(e.inject.apply(x), IDENTITY)]])
        .collect();
    let project_images: Vec<usize> = reps.iter().map(|&r| e.project.apply(pairs[r].0)).collect();
    let inject = GroupMap::new(
        Arc::clone(&e.kernel_group),
        Arc::clone(&quot),
        inject_images,
        MapKind::Homomorphism,
    )?;
    let project = GroupMap::new(
        Arc::clone(&quot),
        Arc::clone(g),
        project_images,
        MapKind::Homomorphism,
    )?;
    Extension::new(
        quot,
        Arc::clone(&e.kernel_group),
        Arc::clone(g),
        inject,
        project,
    )
}

/// All outer kernels G -> Out(N) for a small N, via its automorphism
/// group table.
pub fn outer_kernels(
    g: &Arc<FiniteGroup>,
    n: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Vec<OuterKernel>> {
    let out = automorphism_group(n, limits)?;
    let gens = g.generating_sequence();
    let mut kernels = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let oo = out.out_count();
    loop {
        let images: Vec<usize> = choice.clone();
        if let Some(hom) = g.extend_generator_map(&gens, &images, &out.out_group) {
            let reps: Vec<Vec<usize>> = hom
                .iter()
                .map(|&cls| out.auts[out.out_reps[cls]].clone())
                .collect();
            kernels.push(OuterKernel::new(Arc::clone(g), Arc::clone(n), reps)?);
        }
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                return Ok(kernels);
            }
            choice[pos] += 1;
            if choice[pos] < oo {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// All wreath product type kernels of G on N^{[G:H]}: homomorphic
/// sections of the wreath group (Out(N),1) wr_H G over G, pushed through
/// the realization map R.
pub fn wreath_kernels(
    h: &Subgroup,
    n: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Vec<(OuterKernel, WreathKernel)>> {
    let g = &h.ambient;
    let k = h.index();
    let out = automorphism_group(n, limits)?;
    let (m_group, codec) = power_group(n, k, limits)?;
    let oo = out.out_count();
    let out_codec = TupleCodec { base: oo, len: k };
    let perms: Vec<Vec<usize>> = g
        .elements()
        .map(|s| {
            (0..k)
                .map(|i| {
                    let (_, y2) = h.coset_factorize(g.mul(h.coset_reps[i], s));
                    h.rep_pos(y2)
                })
                .collect()
        })
        .collect();
    // the wreath group on pairs (outer tuple, g)
    let worder = out_codec
        .order()
        .checked_mul(g.order())
        .filter(|&o| o <= limits.max_group_order)
        .ok_or_else(|| Error::BoundExceeded("wreath search group too large".into()))?;
    let op = out_codec.order();
    let gclone = Arc::clone(g);
    let out_ref = &out;
    let wreath = Arc::new(FiniteGroup::from_fn(worder, |x, y| {
        let (fx, gx) = (x % op, x / op);
        let (fy, gy) = (y % op, y / op);
        let cx = out_codec.decode(fx);
        let cy = out_codec.decode(fy);
        let prod: Vec<usize> = (0..k)
            .map(|i| {
                let a = &out_ref.auts[out_ref.out_reps[cx[i]]];
                let b = &out_ref.auts[out_ref.out_reps[cy[perms[gx][i]]]];
                out_ref
                    .out_class_of_images(&compose_images(a, b))
                    .expect("outer classes compose")
            })
            .collect();
        out_codec.encode(&prod) + op * gclone.mul(gx, gy)
    })?);
    let project: Vec<usize> = (0..worder).map(|x| x / op).collect();
    let secs = cohomology::section_classes(&wreath, &project, g, &[IDENTITY], limits)?;
    let mut kernels = Vec::new();
    for sec in &secs.sections {
        let reps: Vec<Vec<usize>> = g
            .elements()
            .map(|s| {
                let ftuple = out_codec.decode(sec[s] % op);
                (0..m_group.order())
                    .map(|x| {
                        let coords = codec.decode(x);
                        let image: Vec<usize> = (0..k)
                            .map(|i| out.auts[out.out_reps[ftuple[i]]][coords[perms[s][i]]])
                            .collect();
                        codec.encode(&image)
                    })
                    .collect()
            })
            .collect();
        let rho = OuterKernel::new(Arc::clone(g), Arc::clone(&m_group), reps)?;
        let wk = detect_wreath_kernel(&rho, h, n, limits)?
            .ok_or_else(|| Error::Mismatch("constructed wreath kernel not detected".into()))?;
        kernels.push((rho, wk));
    }
    Ok(kernels)
}

/// Push an extension along an automorphism of its kernel group: same
/// total group, inject precomposed with the inverse.
pub fn push_extension(e: &Extension, phi: &GroupMap) -> Result<Extension> {
    if phi.kind != MapKind::Automorphism || phi.source != e.kernel_group {
        return Err(Error::Mismatch(
            "pushing requires a kernel automorphism".into(),
        ));
    }
    let inv = invert_images(&phi.images);
    let images: Vec<usize> = inv.iter().map(|&x| e.inject.apply(x)).collect();
    let inject = GroupMap::new(
        Arc::clone(&e.kernel_group),
        Arc::clone(&e.total),
        images,
        MapKind::Homomorphism,
    )?;
    Extension::new(
        Arc::clone(&e.total),
        Arc::clone(&e.kernel_group),
        Arc::clone(&e.quotient),
        inject,
        e.project.clone(),
    )
}

/// The centerless case: the pullback of 1 -> N -> Aut(N) -> Out(N) -> 1
/// along rho, together with the two views of its section classes.
pub struct AnabelianData {
    pub extension: Extension,
    pub sections: SectionClassSet,
    /// Lifts of rho to Aut(N), as automorphism-index arrays per element.
    pub lifts: Vec<Vec<usize>>,
    /// Lift classes modulo uniform N-conjugation: indices into `lifts`.
    pub lift_classes: Vec<usize>,
}

pub fn anabelian_extension_from_kernel(
    rho: &OuterKernel,
    limits: &Limits,
) -> Result<AnabelianData> {
    if rho.center.order() != 1 {
        return Err(Error::Mismatch("kernel group has nontrivial center".into()));
    }
    let n = &rho.space;
    let g = &rho.source;
    let out = automorphism_group(n, limits)?;
    let aut_group = out
        .aut_group
        .clone()
        .ok_or_else(|| Error::BoundExceeded("automorphism group table unavailable".into()))?;
    let rho_class: Vec<usize> = g
        .elements()
        .map(|s| {
            out.out_class_of_images(&rho.reps[s])
                .ok_or_else(|| Error::InvalidMap("representative is not an automorphism".into()))
        })
        .collect::<Result<_>>()?;
    // pullback inside Aut(N) x G
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..out.aut_count() {
        for s in g.elements() {
            if out.out_class_of[a] == rho_class[s] {
                pairs.push((a, s));
            }
        }
    }
    pairs.sort_unstable();
    debug_assert_eq!(pairs[0], (0, IDENTITY));
    let index_of: HashMap<(usize, usize), usize> = pairs
        .iter()
        .copied()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let ag = Arc::clone(&aut_group);
    let gc = Arc::clone(g);
    let total = Arc::new(FiniteGroup::from_fn(pairs.len(), |x, y| {
        let (a1, s1) = pairs[x];
        let (a2, s2) = pairs[y];
        index_of[&(ag.mul(a1, a2), gc.mul(s1, s2))]
    })?);
    // with trivial center, n -> inn(n) is injective
    let inject_images: Vec<usize> = n
        .elements()
        .map(|x| index_of[&(out.inn_of[x], IDENTITY)])
        .collect();
    let project_images: Vec<usize> = pairs.iter().map(|&(_, s)| s).collect();
    let inject = GroupMap::new(
        Arc::clone(n),
        Arc::clone(&total),
        inject_images,
        MapKind::Homomorphism,
    )?;
    let project = GroupMap::new(
        Arc::clone(&total),
        Arc::clone(g),
        project_images,
        MapKind::Homomorphism,
    )?;
    let extension = Extension::new(total, Arc::clone(n), Arc::clone(g), inject, project)?;
    let sections = sections_of_extension(&extension, limits)?;
    // the lift view: homomorphisms G -> Aut(N) covering rho
    let gens = g.generating_sequence();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..out.aut_count())
                .filter(|&a| out.out_class_of[a] == rho_class[s])
                .collect()
        })
        .collect();
    let mut lifts: Vec<Vec<usize>> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().all(|c| !c.is_empty()) {
        'outer: loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(hom) = g.extend_generator_map(&gens, &images, &aut_group) {
                if g.elements()
                    .all(|s| out.out_class_of[hom[s]] == rho_class[s])
                {
                    lifts.push(hom);
                }
            }
            let mut pos = 0;
            loop {
                if pos == gens.len() {
                    break 'outer;
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }
    lifts.sort_unstable();
    // classes under uniform conjugation by inn(n)
    let lift_index: HashMap<Vec<usize>, usize> = lifts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let mut class_of = vec![usize::MAX; lifts.len()];
    let mut lift_classes = Vec::new();
    for i in 0..lifts.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cls = lift_classes.len();
        lift_classes.push(i);
        for x in n.elements() {
            let inn = out.inn_of[x];
            let inn_inv = out.invert(inn);
            let conj: Vec<usize> = lifts[i]
                .iter()
                .map(|&a| aut_group.mul(aut_group.mul(inn, a), inn_inv))
                .collect();
            let j = *lift_index
                .get(&conj)
                .ok_or_else(|| Error::Mismatch("conjugated lift is not a lift".into()))?;
            if class_of[j] == usize::MAX {
                class_of[j] = cls;
            }
        }
    }
    // the two views must agree: section s(g) = (lift(g), g)
    if lift_classes.len() != sections.classes.len() {
        return Err(Error::Mismatch(
            "lift classes disagree with section classes".into(),
        ));
    }
    for &li in &lift_classes {
        let images: Vec<usize> = g.elements().map(|s| index_of[&(lifts[li][s], s)]).collect();
        if sections.section_index(&images).is_none() {
            return Err(Error::Mismatch("lift does not give a section".into()));
        }
    }
    Ok(AnabelianData {
        extension,
        sections,
        lifts,
        lift_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn limits() -> Limits {
        Limits {
            max_group_order: 4096,
            ..Default::default()
        }
    }

    fn inversion_action(g: &Arc<FiniteGroup>, n: &Arc<FiniteGroup>) -> GAction {
        let inv: Vec<usize> = n.elements().map(|x| n.inv(x)).collect();
        let theta: Vec<Vec<usize>> = g
            .elements()
            .map(|s| {
                if s % 2 == 0 {
                    n.elements().collect()
                } else {
                    inv.clone()
                }
            })
            .collect();
        GAction::new(Arc::clone(g), Arc::clone(n), theta).unwrap()
    }

    fn s3_over_c2() -> Extension {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let act = inversion_action(&c2, &c3);
        Extension::from_semidirect(&semidirect_product(&act, &limits()).unwrap()).unwrap()
    }

    #[test]
    fn factor_system_round_trip() {
        let e = s3_over_c2();
        assert!(!e.total.is_abelian());
        let fs = FactorSystem::from_extension(&e).unwrap();
        let back = fs.to_extension(&limits()).unwrap();
        assert!(extension_isomorphic(&e, &back, &limits())
            .unwrap()
            .is_some());
    }

    #[test]
    fn kernel_of_direct_product_is_trivial() {
        let s3 = Arc::new(FiniteGroup::symmetric(3, &limits()).unwrap());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let e = Extension::direct_product(&s3, &c2, &limits()).unwrap();
        let rho = kernel_of_extension(&e).unwrap();
        let triv = trivial_kernel(&c2, &s3).unwrap();
        assert!(rho.outer_equal(&triv));
        let obs = obstruction_delta(&rho, &limits()).unwrap();
        assert!(obs.is_zero());
    }

    #[test]
    fn kernel_of_nonsplit_extension() {
        // the quaternion-like outer action of C2 on C4 by inversion,
        // realized by the dicyclic group of order 8
        let q8 = Arc::new(FiniteGroup::dicyclic(2));
        // the cyclic subgroup generated by the first order-4 element
        let gen = q8.elements().find(|&x| q8.elem_order(x) == 4).unwrap();
        let cyc = Subgroup::from_generators(Arc::clone(&q8), &[gen]).unwrap();
        assert_eq!(cyc.order(), 4);
        assert!(cyc.is_normal());
        let mut members: Vec<usize> = (0..cyc.order()).map(|i| cyc.to_ambient(i)).collect();
        members.sort_unstable();
        let (quot, class_of, _) = quotient_group(&q8, &members).unwrap();
        assert_eq!(quot.order(), 2);
        let inject = GroupMap::new(
            Arc::clone(&cyc.group),
            Arc::clone(&q8),
            (0..cyc.order()).map(|i| cyc.to_ambient(i)).collect(),
            MapKind::Homomorphism,
        )
        .unwrap();
        let project = GroupMap::new(
            Arc::clone(&q8),
            Arc::clone(&quot),
            class_of,
            MapKind::Homomorphism,
        )
        .unwrap();
        let e = Extension::new(q8.clone(), cyc.group.clone(), quot, inject, project).unwrap();
        let rho = kernel_of_extension(&e).unwrap();
        // the action on C4 is by inversion, which is not inner
        assert!(!rho.outer_equal(&trivial_kernel(&rho.source, &rho.space).unwrap()));
        // and the extension itself has no splitting
        let secs = sections_of_extension(&e, &limits()).unwrap();
        assert!(secs.classes.is_empty());
    }

    #[test]
    fn extension_classes_of_c2_by_c2() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let rho = trivial_kernel(&c2, &c2).unwrap();
        let set = extensions_with_kernel(&rho, &limits()).unwrap();
        assert_eq!(set.h2.order, 2);
        assert_eq!(set.extensions.len(), 2);
        assert_eq!(set.iso_classes.len(), 2);
        let mut max_orders: Vec<usize> = set
            .extensions
            .iter()
            .map(|e| {
                e.total
                    .elements()
                    .map(|x| e.total.elem_order(x))
                    .max()
                    .unwrap()
            })
            .collect();
        max_orders.sort_unstable();
        assert_eq!(max_orders, vec![2, 4]); // Klein four group and C4
    }

    #[test]
    fn extension_classes_of_c2_by_c3() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        // trivial kernel: only C6
        let set = extensions_with_kernel(&trivial_kernel(&c2, &c3).unwrap(), &limits()).unwrap();
        assert_eq!(set.extensions.len(), 1);
        assert!(set.extensions[0].total.is_abelian());
        // inversion kernel: only S3
        let inv: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let rho = OuterKernel::new(
            Arc::clone(&c2),
            Arc::clone(&c3),
            vec![c3.elements().collect(), inv],
        )
        .unwrap();
        let set = extensions_with_kernel(&rho, &limits()).unwrap();
        assert_eq!(set.extensions.len(), 1);
        assert!(!set.extensions[0].total.is_abelian());
    }

    #[test]
    fn obstruction_independent_of_representative_choice() {
        let d4 = Arc::new(FiniteGroup::dihedral(4));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        for rho in outer_kernels(&c2, &d4, &limits()).unwrap() {
            let obs = obstruction_delta(&rho, &limits()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..3 {
                // multiply each representative by a random inner map
                let reps: Vec<Vec<usize>> = rho
                    .reps
                    .iter()
                    .map(|r| {
                        let c = rng.gen_range(0..d4.order());
                        let inner: Vec<usize> = d4.elements().map(|x| d4.conj(c, x)).collect();
                        compose_images(&inner, r)
                    })
                    .collect();
                let rho2 = OuterKernel::new(Arc::clone(&c2), Arc::clone(&d4), reps).unwrap();
                let obs2 = obstruction_delta(&rho2, &limits()).unwrap();
                assert_eq!(obs.label, obs2.label);
            }
        }
    }

    #[test]
    fn realizable_kernels_have_zero_obstruction() {
        // every kernel coming from an actual extension must be unobstructed
        let q8 = Arc::new(FiniteGroup::dicyclic(2));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        for rho in outer_kernels(&c2, &q8, &limits()).unwrap() {
            let set = extensions_with_kernel(&rho, &limits()).unwrap();
            if !set.obstruction.as_ref().unwrap().is_zero() {
                assert!(set.extensions.is_empty());
                continue;
            }
            for e in &set.extensions {
                let back = kernel_of_extension(e).unwrap();
                assert!(back.outer_equal(&rho));
                assert!(obstruction_delta(&back, &limits()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn h2_action_moves_between_extension_classes() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let rho = trivial_kernel(&c2, &c2).unwrap();
        let set = extensions_with_kernel(&rho, &limits()).unwrap();
        let split = &set.extensions[set.labels.iter().position(|l| l == &[0]).unwrap()];
        let other = &set.extensions[set.labels.iter().position(|l| l == &[1]).unwrap()];
        let moved = act_h2_on_extension(&set.h2, &[1], split, &limits()).unwrap();
        assert!(extension_isomorphic(&moved, other, &limits())
            .unwrap()
            .is_some());
        assert!(extension_isomorphic(&moved, split, &limits())
            .unwrap()
            .is_none());
        let fixed = act_h2_on_extension(&set.h2, &[0], split, &limits()).unwrap();
        assert!(extension_isomorphic(&fixed, split, &limits())
            .unwrap()
            .is_some());
    }

    #[test]
    fn wreath_detection_accepts_and_refuses() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let act = inversion_action(&h.group, &c3);
        let sd = crate::action::twisted_wreath(&h, &act, &limits()).unwrap();
        let e = Extension::from_semidirect(&sd).unwrap();
        let rho = kernel_of_extension(&e).unwrap();
        let wk = detect_wreath_kernel(&rho, &h, &c3, &limits()).unwrap();
        let wk = wk.expect("twisted wreath kernel must be detected");
        assert_eq!(wk.lift.len(), 4);
        // refusal: C2 acting on C3 x C3 by negating the first slot only,
        // which cannot be a permute-and-twist map for the coset swap
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let h2 = Subgroup::new(Arc::clone(&c2), vec![0]).unwrap();
        let (m, codec) = power_group(&c3, 2, &limits()).unwrap();
        let neg_first: Vec<usize> = (0..m.order())
            .map(|x| {
                let c = codec.decode(x);
                codec.encode(&[c3.inv(c[0]), c[1]])
            })
            .collect();
        let rho2 = OuterKernel::new(
            Arc::clone(&c2),
            Arc::clone(&m),
            vec![m.elements().collect(), neg_first],
        )
        .unwrap();
        assert!(detect_wreath_kernel(&rho2, &h2, &c3, &limits())
            .unwrap()
            .is_none());
    }

    #[test]
    fn induction_of_split_extension_is_twisted_wreath() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let act = inversion_action(&h.group, &c3);
        let f = Extension::from_semidirect(&semidirect_product(&act, &limits()).unwrap()).unwrap();
        let ind = induce_extension(&f, &h, &limits()).unwrap();
        let sd = crate::action::twisted_wreath(&h, &act, &limits()).unwrap();
        assert_eq!(ind.extension.total.order(), sd.group.order());
        for x in sd.group.elements() {
            for y in sd.group.elements() {
                assert_eq!(ind.extension.total.mul(x, y), sd.group.mul(x, y));
            }
        }
    }

    #[test]
    fn induction_of_nonsplit_extension() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        // F with total group C4: u trivial, m(1,1) = the nontrivial element
        let id: Vec<usize> = c2.elements().collect();
        let fs = FactorSystem::new(
            Arc::clone(&c2),
            Arc::clone(&h.group),
            vec![id.clone(), id],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap();
        let f = fs.to_extension(&limits()).unwrap();
        assert_eq!(
            f.total.elements().map(|x| f.total.elem_order(x)).max(),
            Some(4)
        );
        assert!(sections_of_extension(&f, &limits())
            .unwrap()
            .classes
            .is_empty());
        let ind = induce_extension(&f, &h, &limits()).unwrap();
        assert_eq!(ind.extension.total.order(), 16);
        let tr = transport_sections(&f, &ind, &limits()).unwrap();
        assert!(tr.f_classes.classes.is_empty());
        assert!(tr.e_classes.classes.is_empty());
    }

    #[test]
    fn section_transport_on_split_case() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let act = inversion_action(&h.group, &c3);
        let f = Extension::from_semidirect(&semidirect_product(&act, &limits()).unwrap()).unwrap();
        let ind = induce_extension(&f, &h, &limits()).unwrap();
        let tr = transport_sections(&f, &ind, &limits()).unwrap();
        assert_eq!(tr.f_classes.classes.len(), 1);
        assert_eq!(tr.e_classes.classes.len(), 1);
        assert_eq!(tr.forward, vec![0]);
        assert_eq!(tr.backward, vec![0]);
    }

    #[test]
    fn induction_with_full_subgroup_is_identity_like() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let h = Subgroup::full(Arc::clone(&c2));
        let e = s3_over_c2();
        // reinterpret the S3 extension as an extension of the full subgroup
        let f = Extension::new(
            Arc::clone(&e.total),
            Arc::clone(&e.kernel_group),
            Arc::clone(&h.group),
            e.inject.clone(),
            GroupMap::new(
                Arc::clone(&e.total),
                Arc::clone(&h.group),
                e.project.images.clone(),
                MapKind::Homomorphism,
            )
            .unwrap(),
        )
        .unwrap();
        let ind = induce_extension(&f, &h, &limits()).unwrap();
        assert_eq!(ind.extension.total.order(), 6);
        let back = sh2(&ind.extension, &h, &f.kernel_group, &limits()).unwrap();
        assert!(extension_isomorphic(&back, &f, &limits())
            .unwrap()
            .is_some());
    }

    #[test]
    fn wreath_kernel_enumeration_contains_trivial() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let kernels = wreath_kernels(&h, &c3, &limits()).unwrap();
        assert!(!kernels.is_empty());
        // the plain wreath product (trivial twist) must appear
        let act = GAction::trivial(Arc::clone(&h.group), Arc::clone(&c3));
        let sd = crate::action::twisted_wreath(&h, &act, &limits()).unwrap();
        let plain = kernel_of_extension(&Extension::from_semidirect(&sd).unwrap()).unwrap();
        assert!(kernels.iter().any(|(rho, _)| rho.outer_equal(&plain)));
        // restriction to H recovers a kernel-level datum per entry
        for (_, wk) in &kernels {
            assert_eq!(wk.sh_kernel().len(), 2);
        }
    }

    #[test]
    fn anabelian_lifts_match_sections() {
        let s3 = Arc::new(FiniteGroup::symmetric(3, &limits()).unwrap());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let rho = trivial_kernel(&c2, &s3).unwrap();
        let data = anabelian_extension_from_kernel(&rho, &limits()).unwrap();
        // homomorphisms C2 -> S3 up to conjugacy: trivial and a transposition
        assert_eq!(data.sections.classes.len(), 2);
        assert_eq!(data.lift_classes.len(), 2);
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let rho3 = trivial_kernel(&c3, &s3).unwrap();
        let data3 = anabelian_extension_from_kernel(&rho3, &limits()).unwrap();
        assert_eq!(data3.sections.classes.len(), 2);
    }

    #[test]
    fn pushing_along_kernel_automorphism_keeps_validity() {
        let e = s3_over_c2();
        let inv: Vec<usize> = e
            .kernel_group
            .elements()
            .map(|x| e.kernel_group.inv(x))
            .collect();
        let phi = GroupMap::new(
            Arc::clone(&e.kernel_group),
            Arc::clone(&e.kernel_group),
            inv,
            MapKind::Automorphism,
        )
        .unwrap();
        let pushed = push_extension(&e, &phi).unwrap();
        kernel_of_extension(&pushed).unwrap();
        assert!(extension_isomorphic(&e, &pushed, &limits())
            .unwrap()
            .is_some());
    }
}
