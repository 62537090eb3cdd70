//! Finite groups as explicit multiplication tables, subgroups with right
//! coset machinery, group maps, and automorphism / inner / outer groups.
//!
//! Elements are indices `0..order`, with `0` always the identity. Named
//! and permutation-generated groups are normalized to a deterministic
//! indexing so that repeated construction is bit-stable.

use std::collections::HashMap;
use std::sync::Arc;

use crate::{Error, Limits, Result};

/// A finite group given by its full multiplication table.
///
/// Index `0` is the identity. The table is row-major:
/// `table[a * order + b]` is the product `a * b`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

pub const IDENTITY: usize = 0;

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        let mut acc = IDENTITY;
        for _ in 0..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != IDENTITY {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Build from a table; the identity is located and relabeled to index 0.
    /// Associativity, identity and inverse axioms are checked in full.
    pub fn from_table(mut rows: Vec<Vec<usize>>, limits: &Limits) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > limits.max_group_order {
            return Err(Error::BoundExceeded(format!(
                "group order {} exceeds bound {}",
                n, limits.max_group_order
            )));
        }
        for row in &rows {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table is not square over 0..n".into()));
            }
        }
        // locate the two-sided identity
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        if e != 0 {
            // swap labels 0 <-> e
            let relabel = |x: usize| {
                if x == 0 {
                    e
                } else if x == e {
                    0
                } else {
                    x
                }
            };
            let old = rows.clone();
            for a in 0..n {
                for b in 0..n {
                    rows[a][b] = relabel(old[relabel(a)][relabel(b)]);
                }
            }
        }
        Self::from_normalized_table(rows, true)
    }

    /// Build from a table whose identity is already index 0.
    ///
    /// `check_assoc` controls the O(n^3) associativity scan; internal
    /// constructions whose associativity holds structurally skip it.
    fn from_normalized_table(rows: Vec<Vec<usize>>, check_assoc: bool) -> Result<Self> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            for &x in row {
                table.push(x as u32);
            }
        }
        let g = FiniteGroup {
            order: n,
            table,
            inv: vec![0; n],
        };
        let mut inv = vec![None; n];
        for a in 0..n {
            for b in 0..n {
                if g.mul(a, b) == IDENTITY && g.mul(b, a) == IDENTITY {
                    inv[a] = Some(b as u32);
                }
            }
        }
        let inv: Vec<u32> = inv
            .into_iter()
            .enumerate()
            .map(|(a, i)| {
                i.ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<_>>()?;
        let g = FiniteGroup { inv, ..g };
        if check_assoc {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::InvalidGroup(format!(
                                "non-associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Internal constructor for tables built from known-good group data.
    pub(crate) fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_normalized_table(rows, cfg!(debug_assertions) && order <= 64)
    }

    /// Expand a permutation generator list to a group by closure.
    ///
    /// The resulting indexing sorts the closed set of permutations
    /// lexicographically, which puts the identity at index 0.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], limits: &Limits) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::InvalidGroup("generator has wrong degree".into()));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![id];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in gens {
                // apply the frontier element first, then the generator
                let p = &elems[i];
                let q: Vec<usize> = (0..degree).map(|x| g[p[x]]).collect();
                if !index.contains_key(&q) {
                    if elems.len() >= limits.max_group_order {
                        return Err(Error::BoundExceeded(format!(
                            "closure exceeds order bound {}",
                            limits.max_group_order
                        )));
                    }
                    index.insert(q.clone(), elems.len());
                    elems.push(q);
                    frontier.push(elems.len() - 1);
                }
            }
        }
        elems.sort();
        let index: HashMap<Vec<usize>, usize> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let n = elems.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        // product a*b acts by b first, then a
                        let p: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                        index[&p]
                    })
                    .collect()
            })
            .collect();
        Self::from_normalized_table(rows, false)
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, |_, _| 0).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    /// Direct product with index (a, b) -> a * |B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        Self::from_fn(na * nb, |x, y| {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            a.mul(xa, ya) * nb + b.mul(xb, yb)
        })
        .unwrap()
    }

    /// Dihedral group of order 2n, elements r^i s^j with index i + n*j.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(2 * n, |x, y| {
            let (i1, j1) = (x % n, x / n);
            let (i2, j2) = (y % n, y / n);
            let i = if j1 == 0 {
                (i1 + i2) % n
            } else {
                (i1 + n - i2) % n
            };
            i + n * ((j1 + j2) % 2)
        })
        .unwrap()
    }

    /// Dicyclic group of order 4n: a of order 2n, x^2 = a^n, x a x^-1 = a^-1.
    /// Elements a^i x^j with index i + 2n*j. `dicyclic(2)` is Q8.
    pub fn dicyclic(n: usize) -> Self {
        let m = 2 * n;
        Self::from_fn(4 * n, |x, y| {
            let (i1, j1) = (x % m, x / m);
            let (i2, j2) = (y % m, y / m);
            if j1 == 0 {
                (i1 + i2) % m + m * j2
            } else if j2 == 0 {
                (i1 + m - i2) % m + m
            } else {
                (i1 + m - i2 + n) % m
            }
        })
        .unwrap()
    }

    pub fn symmetric(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Ok(Self::trivial());
        }
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
            gens.push(cycle);
        }
        Self::from_permutations(n, &gens, limits)
    }

    pub fn alternating4(limits: &Limits) -> Result<Self> {
        // (0 1 2) and (0 1)(2 3)
        Self::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], limits)
    }

    /// Parse a group name: `Cn`, `Sn`, `Dn` (order 2n), `Q8`, `A4`, and
    /// `x`-separated direct products such as `C2xC2`.
    pub fn named(name: &str, limits: &Limits) -> Result<Self> {
        let parts: Vec<&str> = name.split('x').collect();
        if parts.len() > 1 {
            let mut g = Self::named(parts[0], limits)?;
            for p in &parts[1..] {
                let h = Self::named(p, limits)?;
                if g.order * h.order > limits.max_group_order {
                    return Err(Error::BoundExceeded(format!(
                        "product {name} exceeds order bound"
                    )));
                }
                g = Self::direct_product(&g, &h);
            }
            return Ok(g);
        }
        let bad = || Error::Parse(format!("unknown group name {name:?}"));
        let (kind, num) = name.split_at(1);
        let n: usize = num.parse().map_err(|_| bad())?;
        match kind {
            "C" if n >= 1 && n <= limits.max_group_order => Ok(Self::cyclic(n)),
            "S" if (1..=5).contains(&n) => Self::symmetric(n, limits),
            "D" if n >= 2 && 2 * n <= limits.max_group_order => Ok(Self::dihedral(n)),
            "Q" if n == 8 => Ok(Self::dicyclic(2)),
            "A" if n == 4 => Self::alternating4(limits),
            _ => Err(bad()),
        }
    }

    /// Sizes of the conjugacy classes, indexed by element.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut class = vec![usize::MAX; self.order];
        let mut sizes = Vec::new();
        for x in 0..self.order {
            if class[x] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            let mut members = Vec::new();
            for g in 0..self.order {
                let y = self.conj(g, x);
                if class[y] == usize::MAX {
                    class[y] = c;
                    members.push(y);
                }
            }
            sizes.push(members.len());
        }
        (0..self.order).map(|x| sizes[class[x]]).collect()
    }

    /// Greedy minimal generating sequence, deterministic by element order.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = self.closure(&[]);
        for x in 0..self.order {
            if closure.len() == self.order {
                break;
            }
            if !closure.contains(&x) {
                gens.push(x);
                closure = self.closure(&gens);
            }
        }
        gens
    }

    /// Sorted element set of the subgroup generated by `seed`.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[IDENTITY] = true;
        let mut elems = vec![IDENTITY];
        let mut frontier = vec![IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in seed {
                let y = self.mul(x, g);
                if !in_set[y] {
                    in_set[y] = true;
                    elems.push(y);
                    frontier.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// All subgroups, each as a sorted element list, in a deterministic order.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![IDENTITY]];
        let mut i = 0;
        while i < found.len() {
            let base = found[i].clone();
            for x in 0..self.order {
                if base.contains(&x) {
                    continue;
                }
                let mut seed = base.clone();
                seed.push(x);
                let sub = self.closure(&seed);
                if !found.contains(&sub) {
                    found.push(sub);
                }
            }
            i += 1;
        }
        found.sort_by_key(|s| (s.len(), s.clone()));
        found
    }

    /// Propagate generator images to a full map source -> target and verify
    /// it is a homomorphism. `gens` must generate the source.
    pub fn extend_generator_map(
        &self,
        gens: &[usize],
        images: &[usize],
        target: &FiniteGroup,
    ) -> Option<Vec<usize>> {
        debug_assert_eq!(gens.len(), images.len());
        let mut val: Vec<Option<usize>> = vec![None; self.order];
        val[IDENTITY] = Some(IDENTITY);
        let mut frontier = vec![IDENTITY];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let v = target.mul(val[x].unwrap(), img);
                match val[y] {
                    None => {
                        val[y] = Some(v);
                        frontier.push(y);
                    }
                    Some(w) if w != v => return None,
                    _ => {}
                }
            }
        }
        let map: Vec<usize> = val.into_iter().collect::<Option<_>>()?;
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// How much structure a [`GroupMap`] is known to carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MapKind {
    SetMap,
    Homomorphism,
    Isomorphism,
    Automorphism,
}

/// A map between the element sets of two groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub images: Vec<usize>,
    pub kind: MapKind,
}

impl GroupMap {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
        kind: MapKind,
    ) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::InvalidMap("image array has wrong length".into()));
        }
        if images.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidMap("image out of range".into()));
        }
        if kind >= MapKind::Homomorphism {
            for a in source.elements() {
                for b in source.elements() {
                    if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                        return Err(Error::InvalidMap(format!(
                            "not a homomorphism at ({a},{b})"
                        )));
                    }
                }
            }
        }
        if kind >= MapKind::Isomorphism {
            let mut seen = vec![false; target.order()];
            for &x in &images {
                if seen[x] {
                    return Err(Error::InvalidMap("not a bijection".into()));
                }
                seen[x] = true;
            }
            if source.order() != target.order() {
                return Err(Error::InvalidMap("orders differ".into()));
            }
        }
        if kind == MapKind::Automorphism && source != target {
            return Err(Error::InvalidMap("automorphism endpoints differ".into()));
        }
        Ok(GroupMap {
            source,
            target,
            images,
            kind,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&x| x == IDENTITY)
    }
}

/// A subgroup with right-coset machinery for H\G.
///
/// Coset representatives are the lexicographically smallest element of
/// each right coset Hg; `gamma` and `y` factor every g as g = gamma_g * y_g.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Arc<FiniteGroup>,
    /// Sorted ambient element indices of the subgroup.
    pub members: Vec<usize>,
    /// The subgroup as an abstract group on indices into `members`.
    pub group: Arc<FiniteGroup>,
    /// Sorted right-coset representatives; `coset_reps[0] == 0`.
    pub coset_reps: Vec<usize>,
    gamma: Vec<usize>,
    y: Vec<usize>,
    member_index: Vec<Option<usize>>,
    rep_index: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn new(ambient: Arc<FiniteGroup>, members: Vec<usize>) -> Result<Self> {
        let n = ambient.order();
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("subgroup element out of range".into()));
        }
        if members.is_empty() || members[0] != IDENTITY {
            return Err(Error::InvalidGroup(
                "subgroup must contain the identity".into(),
            ));
        }
        let mut member_index = vec![None; n];
        for (i, &m) in members.iter().enumerate() {
            member_index[m] = Some(i);
        }
        for &a in &members {
            if member_index[ambient.inv(a)].is_none() {
                return Err(Error::InvalidGroup(
                    "subgroup not closed under inverse".into(),
                ));
            }
            for &b in &members {
                if member_index[ambient.mul(a, b)].is_none() {
                    return Err(Error::InvalidGroup(
                        "subgroup not closed under product".into(),
                    ));
                }
            }
        }
        let k = members.len();
        let group = FiniteGroup::from_fn(k, |a, b| {
            member_index[ambient.mul(members[a], members[b])].unwrap()
        })?;
        // right cosets Hg with lexicographically smallest representatives
        let mut y = vec![usize::MAX; n];
        let mut coset_reps = Vec::new();
        for g in 0..n {
            if y[g] != usize::MAX {
                continue;
            }
            let rep = members.iter().map(|&h| ambient.mul(h, g)).min().unwrap();
            coset_reps.push(rep);
            for &h in &members {
                y[ambient.mul(h, g)] = rep;
            }
        }
        coset_reps.sort_unstable();
        let mut rep_index = vec![None; n];
        for (i, &r) in coset_reps.iter().enumerate() {
            rep_index[r] = Some(i);
        }
        let gamma: Vec<usize> = (0..n).map(|g| ambient.mul(g, ambient.inv(y[g]))).collect();
        debug_assert!(gamma.iter().all(|&h| member_index[h].is_some()));
        Ok(Subgroup {
            ambient,
            members,
            group: Arc::new(group),
            coset_reps,
            gamma,
            y,
            member_index,
            rep_index,
        })
    }

    pub fn from_generators(ambient: Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        let members = ambient.closure(gens);
        Self::new(ambient, members)
    }

    pub fn full(ambient: Arc<FiniteGroup>) -> Self {
        let members = (0..ambient.order()).collect();
        Self::new(ambient, members).unwrap()
    }

    pub fn trivial(ambient: Arc<FiniteGroup>) -> Self {
        Self::new(ambient, vec![IDENTITY]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member_index[g].is_some()
    }

    /// Ambient element -> abstract subgroup index.
    pub fn to_sub(&self, g: usize) -> usize {
        self.member_index[g].expect("element not in subgroup")
    }

    /// Abstract subgroup index -> ambient element.
    pub fn to_ambient(&self, h: usize) -> usize {
        self.members[h]
    }

    /// Position of a coset representative in `coset_reps`.
    pub fn rep_pos(&self, rep: usize) -> usize {
        self.rep_index[rep].expect("not a coset representative")
    }

    /// Factor g = gamma_g * y_g with gamma_g in H and y_g a coset rep.
    pub fn coset_factorize(&self, g: usize) -> (usize, usize) {
        (self.gamma[g], self.y[g])
    }

    pub fn is_normal(&self) -> bool {
        let amb = &self.ambient;
        self.members
            .iter()
            .all(|&h| (0..amb.order()).all(|g| self.contains(amb.conj(g, h))))
    }
}

/// The center of `g` as a subgroup.
pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let members: Vec<usize> = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::new(Arc::clone(g), members).expect("center is a subgroup")
}

/// Aut(N) with its inner subgroup and the quotient Out(N) = Aut(N)/Inn(N).
///
/// Automorphisms are image arrays sorted lexicographically, which puts the
/// identity automorphism at index 0. Composition `compose(a, b)` applies
/// `b` first. The table forms (`aut_group`, `inn_subgroup`) are only
/// materialized while Aut(N) is within the table bound; the outer data is
/// always present.
#[derive(Clone, Debug)]
pub struct OuterGroup {
    pub space: Arc<FiniteGroup>,
    pub auts: Vec<Vec<usize>>,
    aut_index: HashMap<Vec<usize>, usize>,
    /// n -> index of conjugation by n in `auts`.
    pub inn_of: Vec<usize>,
    pub is_inner: Vec<bool>,
    /// aut index -> outer class index.
    pub out_class_of: Vec<usize>,
    /// outer class -> lexicographically smallest representative aut index;
    /// class 0 is the class of the identity.
    pub out_reps: Vec<usize>,
    pub out_group: Arc<FiniteGroup>,
    pub aut_group: Option<Arc<FiniteGroup>>,
    pub inn_subgroup: Option<Subgroup>,
}

impl OuterGroup {
    pub fn aut_count(&self) -> usize {
        self.auts.len()
    }

    pub fn out_count(&self) -> usize {
        self.out_reps.len()
    }

    pub fn inn_count(&self) -> usize {
        self.is_inner.iter().filter(|&&b| b).count()
    }

    pub fn aut_index_of(&self, images: &[usize]) -> Option<usize> {
        self.aut_index.get(images).copied()
    }

    /// `compose(a, b)` applies `b` first.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let fa = &self.auts[a];
        let fb = &self.auts[b];
        let images: Vec<usize> = (0..fb.len()).map(|x| fa[fb[x]]).collect();
        self.aut_index[&images]
    }

    pub fn invert(&self, a: usize) -> usize {
        let fa = &self.auts[a];
        let mut images = vec![0; fa.len()];
        for (x, &fx) in fa.iter().enumerate() {
            images[fx] = x;
        }
        self.aut_index[&images]
    }

    /// Outer class of an arbitrary automorphism image array.
    pub fn out_class_of_images(&self, images: &[usize]) -> Option<usize> {
        self.aut_index.get(images).map(|&i| self.out_class_of[i])
    }
}

/// Enumerate all automorphisms of `n` by generator-image backtracking,
/// pruning candidates by element order and conjugacy class size.
pub fn automorphisms(n: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    if n.order() > limits.max_aut_input_order {
        return Err(Error::BoundExceeded(format!(
            "automorphism search on order {} exceeds bound {}",
            n.order(),
            limits.max_aut_input_order
        )));
    }
    let gens = n.generating_sequence();
    if gens.is_empty() {
        return Ok(vec![vec![IDENTITY]]);
    }
    let class_sizes = n.class_sizes();
    let orders: Vec<usize> = n.elements().map(|x| n.elem_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            n.elements()
                .filter(|&x| orders[x] == orders[g] && class_sizes[x] == class_sizes[g])
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut images = vec![0usize; gens.len()];
    fn rec(
        n: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
        found: &mut Vec<Vec<usize>>,
    ) {
        if depth == gens.len() {
            if let Some(map) = n.extend_generator_map(gens, images, n) {
                let mut seen = vec![false; n.order()];
                if map.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                    found.push(map);
                }
            }
            return;
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            rec(n, gens, candidates, images, depth + 1, found);
        }
    }
    rec(n, &gens, &candidates, &mut images, 0, &mut found);
    found.sort();
    found.dedup();
    Ok(found)
}

/// Compute Aut(N), Inn(N) and Out(N) with canonical outer representatives.
pub fn automorphism_group(n: &Arc<FiniteGroup>, limits: &Limits) -> Result<OuterGroup> {
    let auts = automorphisms(n, limits)?;
    let aut_index: HashMap<Vec<usize>, usize> = auts
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect();
    let inn_of: Vec<usize> = n
        .elements()
        .map(|g| {
            let images: Vec<usize> = n.elements().map(|x| n.conj(g, x)).collect();
            aut_index[&images]
        })
        .collect();
    let mut is_inner = vec![false; auts.len()];
    for &i in &inn_of {
        is_inner[i] = true;
    }
    // right cosets Inn * a; since Inn is normal these are the outer classes
    let mut out_class_of = vec![usize::MAX; auts.len()];
    let mut out_reps = Vec::new();
    for a in 0..auts.len() {
        if out_class_of[a] != usize::MAX {
            continue;
        }
        // auts are sorted, so the first unseen member is the lex-least rep
        let class = out_reps.len();
        out_reps.push(a);
        for &g in inn_of.iter() {
            let composed = compose_images(&auts[g], &auts[a]);
            out_class_of[aut_index[&composed]] = class;
        }
    }
    let out_group = FiniteGroup::from_fn(out_reps.len(), |c1, c2| {
        let composed = compose_images(&auts[out_reps[c1]], &auts[out_reps[c2]]);
        out_class_of[aut_index[&composed]]
    })?;
    let (aut_group, inn_subgroup) = if auts.len() <= limits.max_aut_table {
        let ag = Arc::new(FiniteGroup::from_fn(auts.len(), |a, b| {
            aut_index[&compose_images(&auts[a], &auts[b])]
        })?);
        let mut inn_members: Vec<usize> = inn_of.clone();
        inn_members.sort_unstable();
        inn_members.dedup();
        let inn = Subgroup::new(Arc::clone(&ag), inn_members)?;
        (Some(ag), Some(inn))
    } else {
        (None, None)
    };
    Ok(OuterGroup {
        space: Arc::clone(n),
        auts,
        aut_index,
        inn_of,
        is_inner,
        out_class_of,
        out_reps,
        out_group: Arc::new(out_group),
        aut_group,
        inn_subgroup,
    })
}

/// Compose automorphism image arrays, applying `b` first.
pub fn compose_images(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert_images(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (x, &fx) in a.iter().enumerate() {
        out[fx] = x;
    }
    out
}

/// Whether `images` differs from the identity automorphism by an inner
/// automorphism of `n`; returns a witnessing conjugator.
pub fn as_inner(n: &FiniteGroup, images: &[usize]) -> Option<usize> {
    n.elements()
        .find(|&g| n.elements().all(|x| images[x] == n.conj(g, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn cyclic_table_is_addition() {
        let g = FiniteGroup::cyclic(4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.mul(a, b), (a + b) % 4);
            }
        }
    }

    #[test]
    fn s3_from_transposition_and_cycle() {
        let g =
            FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], &limits()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn bad_table_missing_inverse() {
        // order 2, mul(1,1) = 1 with identity 0: element 1 has no inverse
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_table(rows, &limits()),
            Err(Error::InvalidGroup(_))
        ));
    }

    #[test]
    fn table_identity_relabeled_to_zero() {
        // C2 with identity at index 1
        let rows = vec![vec![0, 1], vec![1, 0]];
        let shifted = vec![vec![1, 0], vec![0, 1]]; // here 1 is the identity
        let a = FiniteGroup::from_table(rows, &limits()).unwrap();
        let b = FiniteGroup::from_table(shifted, &limits()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn group_axioms_full_scan_on_named_groups() {
        for name in ["C1", "C6", "S3", "S4", "D4", "Q8", "C2xC2", "C2xC4", "A4"] {
            let g = FiniteGroup::named(name, &limits()).unwrap();
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.mul(a, IDENTITY), a);
                assert_eq!(g.mul(IDENTITY, a), a);
                assert_eq!(g.mul(a, g.inv(a)), IDENTITY);
                assert_eq!(g.mul(g.inv(a), a), IDENTITY);
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn centers() {
        let s3 = Arc::new(FiniteGroup::named("S3", &limits()).unwrap());
        assert_eq!(center(&s3).order(), 1);
        let d4 = Arc::new(FiniteGroup::named("D4", &limits()).unwrap());
        assert_eq!(center(&d4).order(), 2);
        let q8 = Arc::new(FiniteGroup::named("Q8", &limits()).unwrap());
        assert_eq!(center(&q8).order(), 2);
        let ab = Arc::new(FiniteGroup::named("C2xC4", &limits()).unwrap());
        assert_eq!(center(&ab).order(), 8);
    }

    #[test]
    fn coset_factorization() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let h = Subgroup::new(Arc::clone(&c4), vec![0, 2]).unwrap();
        assert_eq!(h.coset_reps, vec![0, 1]);
        assert_eq!(h.coset_factorize(3), (2, 1));
        // full subgroup: single coset
        let full = Subgroup::full(Arc::clone(&c4));
        for g in 0..4 {
            assert_eq!(full.coset_factorize(g), (g, 0));
        }
        // trivial subgroup: singleton cosets
        let triv = Subgroup::trivial(Arc::clone(&c4));
        for g in 0..4 {
            assert_eq!(triv.coset_factorize(g), (0, g));
        }
    }

    #[test]
    fn coset_factorization_is_bijective() {
        for name in ["S3", "D4", "C6", "A4"] {
            let g = Arc::new(FiniteGroup::named(name, &limits()).unwrap());
            for members in g.all_subgroups() {
                let h = Subgroup::new(Arc::clone(&g), members).unwrap();
                assert_eq!(h.index() * h.order(), g.order());
                let mut seen = std::collections::HashSet::new();
                for x in g.elements() {
                    let (gamma, y) = h.coset_factorize(x);
                    assert!(h.contains(gamma));
                    assert_eq!(g.mul(gamma, y), x);
                    assert!(seen.insert((gamma, y)));
                }
                assert_eq!(seen.len(), g.order());
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let lim = limits();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let og = automorphism_group(&c3, &lim).unwrap();
        assert_eq!((og.aut_count(), og.inn_count(), og.out_count()), (2, 1, 2));

        let triv = Arc::new(FiniteGroup::trivial());
        let og = automorphism_group(&triv, &lim).unwrap();
        assert_eq!((og.aut_count(), og.inn_count(), og.out_count()), (1, 1, 1));

        let s3 = Arc::new(FiniteGroup::named("S3", &lim).unwrap());
        let og = automorphism_group(&s3, &lim).unwrap();
        assert_eq!((og.aut_count(), og.inn_count(), og.out_count()), (6, 6, 1));

        let q8 = Arc::new(FiniteGroup::named("Q8", &lim).unwrap());
        let og = automorphism_group(&q8, &lim).unwrap();
        assert_eq!((og.aut_count(), og.inn_count(), og.out_count()), (24, 4, 6));

        let v4 = Arc::new(FiniteGroup::named("C2xC2", &lim).unwrap());
        let og = automorphism_group(&v4, &lim).unwrap();
        assert_eq!((og.aut_count(), og.inn_count(), og.out_count()), (6, 1, 6));
    }

    #[test]
    fn inn_order_equals_quotient_by_center() {
        let lim = limits();
        for name in ["C4", "S3", "D4", "Q8", "A4", "C2xC2"] {
            let g = Arc::new(FiniteGroup::named(name, &lim).unwrap());
            let og = automorphism_group(&g, &lim).unwrap();
            assert_eq!(og.inn_count(), g.order() / center(&g).order());
            assert_eq!(og.aut_count() % og.inn_count(), 0);
            assert_eq!(og.aut_count(), og.inn_count() * og.out_count());
        }
    }

    #[test]
    fn outer_reps_identity_class() {
        let lim = limits();
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let og = automorphism_group(&c3, &lim).unwrap();
        assert_eq!(og.out_reps[0], 0);
        assert_eq!(og.auts[0], vec![0, 1, 2]);
    }

    #[test]
    fn construction_is_deterministic() {
        let lim = limits();
        for name in ["S4", "D4", "Q8", "A4"] {
            let a = FiniteGroup::named(name, &lim).unwrap();
            let b = FiniteGroup::named(name, &lim).unwrap();
            assert_eq!(a, b);
        }
    }
}
