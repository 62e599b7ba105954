//! Finite groups as closed element sets with an explicit multiplication
//! table. Element 0 is always the identity. Multiplication is read left to
//! right: `mult(g, h)` is "g then h", matching the right-action convention
//! used throughout the crate.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;

pub const DEFAULT_CLOSURE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    num_gens: usize,
    // word in generator letters reaching each element from the identity
    gen_words: Vec<Vec<usize>>,
}

fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn gen_word(&self, g: usize) -> &[usize] {
        &self.gen_words[g]
    }

    /// The element a generator letter stands for.
    pub fn generator_element(&self, letter: usize) -> Option<usize> {
        (0..self.order).find(|&g| self.gen_words[g].as_slice() == [letter])
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut n = 1;
        while acc != 0 {
            acc = self.mult(acc, g);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Same underlying group law, ignoring how generators were declared.
    pub fn same_multiplication(&self, other: &GroupTable) -> bool {
        self.order == other.order && self.mult == other.mult
    }

    /// Closure of permutation generators under composition, breadth first.
    /// Element numbering is BFS discovery order, which fixes all downstream
    /// variable names and cross-sections.
    pub fn from_permutations(
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Arc<GroupTable>, Error> {
        if generators.is_empty() {
            return Err(Error::NotAGroup("no generators given".to_string()));
        }
        let n = generators[0].len();
        for g in generators {
            if g.len() != n {
                return Err(Error::NotAGroup(
                    "generators act on sets of different sizes".to_string(),
                ));
            }
            let mut seen = vec![false; n];
            for &i in g {
                if i >= n || seen[i] {
                    return Err(Error::NotABijection);
                }
                seen[i] = true;
            }
        }
        let identity: Vec<usize> = (0..n).collect();
        let mut perms = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < perms.len() {
            for (j, g) in generators.iter().enumerate() {
                let next = perm_compose(&perms[head], g);
                if !index.contains_key(&next) {
                    if perms.len() >= cap {
                        return Err(Error::ClosureCap(cap));
                    }
                    let mut w = words[head].clone();
                    w.push(j);
                    index.insert(next.clone(), perms.len());
                    perms.push(next);
                    words.push(w);
                }
            }
            head += 1;
        }
        let order = perms.len();
        let mut mult = vec![0usize; order * order];
        for a in 0..order {
            for b in 0..order {
                mult[a * order + b] = index[&perm_compose(&perms[a], &perms[b])];
            }
        }
        let table = GroupTable::assemble(order, mult, generators.len(), words)?;
        Ok(Arc::new(table))
    }

    /// A group from an explicit table. Element 0 must be the identity.
    /// Every non-identity element is treated as a generator, in index order.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Arc<GroupTable>, Error> {
        let order = table.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".to_string()));
        }
        let mut mult = vec![0usize; order * order];
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup("table is not square".to_string()));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::NotAGroup(format!(
                        "entry {} out of range at ({}, {})",
                        v, r, c
                    )));
                }
                mult[r * order + c] = v;
            }
        }
        let mut words = vec![vec![]];
        for g in 1..order {
            words.push(vec![g - 1]);
        }
        let table = GroupTable::assemble(order, mult, order.saturating_sub(1), words)?;
        Ok(Arc::new(table))
    }

    fn assemble(
        order: usize,
        mult: Vec<usize>,
        num_gens: usize,
        gen_words: Vec<Vec<usize>>,
    ) -> Result<GroupTable, Error> {
        let at = |a: usize, b: usize| mult[a * order + b];
        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(Error::NotAGroup("element 0 is not an identity".to_string()));
            }
        }
        // rows and columns must be permutations
        for a in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for b in 0..order {
                if std::mem::replace(&mut seen_row[at(a, b)], true) {
                    return Err(Error::NotAGroup(format!("row {} repeats a value", a)));
                }
                if std::mem::replace(&mut seen_col[at(b, a)], true) {
                    return Err(Error::NotAGroup(format!("column {} repeats a value", a)));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![0usize; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| at(a, b) == 0)
                .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", a)))?;
        }
        Ok(GroupTable {
            order,
            mult,
            inverse,
            num_gens,
            gen_words,
        })
    }

    /// Smallest subgroup containing the given elements, as a sorted list.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut stack: Vec<usize> = vec![0];
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                stack.push(s);
            }
        }
        let mut members = stack.clone();
        while let Some(a) = stack.pop() {
            let snapshot = members.clone();
            for &b in &snapshot {
                for prod in [self.mult(a, b), self.mult(b, a), self.inv(a)] {
                    if !in_set[prod] {
                        in_set[prod] = true;
                        stack.push(prod);
                        members.push(prod);
                    }
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order).filter(|&g| in_set[g]).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<GroupTable>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure under multiplication and inverse.
    pub fn new(parent: Arc<GroupTable>, mut elements: Vec<usize>) -> Result<Self, Error> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&e| e >= parent.order()) {
            return Err(Error::SubgroupNotClosed(parent.order()));
        }
        if !elements.contains(&0) {
            return Err(Error::SubgroupNotClosed(0));
        }
        let contains = |e: usize| elements.binary_search(&e).is_ok();
        for &a in &elements {
            if !contains(parent.inv(a)) {
                return Err(Error::SubgroupNotClosed(parent.inv(a)));
            }
            for &b in &elements {
                if !contains(parent.mult(a, b)) {
                    return Err(Error::SubgroupNotClosed(parent.mult(a, b)));
                }
            }
        }
        Ok(Subgroup { parent, elements })
    }

    pub fn trivial(parent: Arc<GroupTable>) -> Self {
        Subgroup {
            parent,
            elements: vec![0],
        }
    }

    pub fn full(parent: Arc<GroupTable>) -> Self {
        let elements = (0..parent.order()).collect();
        Subgroup { parent, elements }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|g| {
            self.elements
                .iter()
                .all(|&h| self.contains(self.parent.mult(self.parent.mult(self.parent.inv(g), h), g)))
        })
    }

    /// A standalone table for this subgroup plus the map from local indices
    /// to parent indices. Local numbering is the sorted element order, so the
    /// parent identity stays at local index 0.
    pub fn to_group_table(&self) -> Result<(Arc<GroupTable>, Vec<usize>), Error> {
        let locals = self.elements.clone();
        let n = locals.len();
        let local_of = |e: usize| locals.binary_search(&e).unwrap();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| local_of(self.parent.mult(locals[a], locals[b])))
                    .collect()
            })
            .collect();
        let table = GroupTable::from_table(table)?;
        Ok((table, locals))
    }
}

/// Right-coset representatives of `h` inside `y` (both element lists of the
/// same parent, `h ⊆ y`), chosen greedily in index order. reps[0] = 0.
pub fn right_coset_reps(parent: &GroupTable, h: &[usize], y: &[usize]) -> Vec<usize> {
    let mut covered = vec![false; parent.order()];
    let mut reps = Vec::new();
    for &r in y {
        if covered[r] {
            continue;
        }
        reps.push(r);
        for &a in h {
            covered[parent.mult(a, r)] = true;
        }
    }
    reps
}

#[derive(Debug, Clone)]
pub struct CrossSection {
    subgroup: Subgroup,
    reps: Vec<usize>,
}

impl CrossSection {
    /// Greedy scan of parent elements in index order.
    pub fn greedy(subgroup: Subgroup) -> Self {
        let all: Vec<usize> = subgroup.parent().elements().collect();
        let reps = right_coset_reps(subgroup.parent(), subgroup.elements(), &all);
        CrossSection { subgroup, reps }
    }

    /// A caller-supplied cross-section; the cosets must partition the group
    /// and reps[0] must be the identity.
    pub fn with_reps(subgroup: Subgroup, reps: Vec<usize>) -> Result<Self, Error> {
        if reps.first() != Some(&0) {
            return Err(Error::NotARepresentative(*reps.first().unwrap_or(&0)));
        }
        let parent = subgroup.parent();
        let mut covered = vec![false; parent.order()];
        for &r in &reps {
            for &a in subgroup.elements() {
                let e = parent.mult(a, r);
                if std::mem::replace(&mut covered[e], true) {
                    return Err(Error::NotARepresentative(r));
                }
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(Error::NotARepresentative(0));
        }
        Ok(CrossSection { subgroup, reps })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep_position(&self, r: usize) -> Option<usize> {
        self.reps.iter().position(|&x| x == r)
    }

    /// Decompose `reps[r_pos]·g = h·reps[r_pos']` with `h` in the subgroup.
    /// Returns `(h, r_pos')`.
    pub fn coset_data(&self, r_pos: usize, g: usize) -> (usize, usize) {
        let parent = self.subgroup.parent();
        let t = parent.mult(self.reps[r_pos], g);
        for (j, &rp) in self.reps.iter().enumerate() {
            let h = parent.mult(t, parent.inv(rp));
            if self.subgroup.contains(h) {
                return (h, j);
            }
        }
        unreachable!("cross-section does not cover the group");
    }
}

fn p_part(mut n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut out = 1;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    out
}

fn is_p_power(mut n: usize, p: u64) -> bool {
    let p = p as usize;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A Sylow p-subgroup, by greedily closing sets of p-power-order elements.
/// Returns the trivial subgroup when p does not divide the order.
pub fn sylow_subgroup(parent: &Arc<GroupTable>, p: u64) -> Result<Subgroup, Error> {
    let target = p_part(parent.order(), p);
    if target == 1 {
        return Ok(Subgroup::trivial(parent.clone()));
    }
    let candidates: Vec<usize> = parent
        .elements()
        .filter(|&g| g != 0 && is_p_power(parent.element_order(g), p))
        .collect();
    let mut current = vec![0usize];
    loop {
        if current.len() == target {
            return Subgroup::new(parent.clone(), current);
        }
        let mut grown = false;
        for &e in &candidates {
            if current.binary_search(&e).is_ok() {
                continue;
            }
            let mut seed = current.clone();
            seed.push(e);
            let closure = parent.subgroup_closure(&seed);
            if closure.len() <= target && is_p_power(closure.len(), p) {
                current = closure;
                grown = true;
                break;
            }
        }
        if !grown {
            return Err(Error::SylowSearchFailed { p });
        }
    }
}

/// O_p(G): the intersection of all conjugates of one Sylow p-subgroup.
pub fn p_core(parent: &Arc<GroupTable>, p: u64) -> Result<Subgroup, Error> {
    let sylow = sylow_subgroup(parent, p)?;
    let mut common: Vec<usize> = sylow.elements().to_vec();
    for g in parent.elements() {
        let gi = parent.inv(g);
        let conj: Vec<usize> = sylow
            .elements()
            .iter()
            .map(|&h| parent.mult(parent.mult(gi, h), g))
            .collect();
        common.retain(|e| conj.contains(e));
    }
    Subgroup::new(parent.clone(), common)
}
