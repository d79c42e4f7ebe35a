//! The seven pre-reduced candidates and the nineteen reduced forms, derived
//! by enumeration.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::egraph::{e_reduce, egraph_decomposition};
use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, CircleGraph, CircleTree, Edge};
use crate::reduction::{match_final_form, FormKind};

/// `(points, slots)` of each pre-reduced candidate, by catalog index.
const PREREDUCED_SHAPES: [(usize, usize); 7] = [(4, 4), (6, 4), (8, 4), (6, 6), (8, 6), (10, 6), (12, 6)];

/// Reduced forms per pre-reduced source, by catalog index.
const REDUCED_COUNTS: [usize; 7] = [1, 3, 1, 2, 6, 6, 0];

/// Largest matching tried when looking for pre-reduced candidates.
const MAX_CHORDS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormEntry {
    /// `T2^i` for pre-reduced forms, `T3^i[j]` for reduced forms.
    pub id: String,
    pub points: usize,
    pub edges: Vec<Edge>,
    pub period: usize,
    /// Pre-reduced form this one e-reduces to; reduced forms only.
    pub source: Option<String>,
    /// Id of the form's reflection.
    pub mirror: String,
    /// Admissible single uncrossed chords; pre-reduced forms only.
    pub slots: Option<usize>,
}

impl FormEntry {
    pub fn canonical(&self) -> CanonicalForm {
        CanonicalForm { k: self.points, edges: self.edges.clone(), period: self.period }
    }

    pub fn graph(&self) -> CircleGraph {
        CircleGraph::from_sorted_unchecked(self.points, self.edges.clone())
    }

    pub fn is_half_period(&self) -> bool {
        2 * self.period == self.points
    }

    pub fn is_reduced(&self) -> bool {
        self.source.is_some()
    }
}

/// Both form families, with lookup by id and by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    prereduced: Vec<FormEntry>,
    reduced: Vec<FormEntry>,
    by_shape: BTreeMap<(usize, Vec<Edge>), (bool, usize)>,
}

impl Catalog {
    /// Derives the catalog from scratch. Takes a fraction of a second.
    pub fn derive() -> Result<Catalog> {
        let prereduced = generate_prereduced_forms()?;
        let reduced = generate_reduced_catalog(&prereduced)?;
        Ok(Catalog::from_entries(prereduced, reduced))
    }

    /// Assembles a catalog from already derived entries, for example a
    /// snapshot read back from disk.
    pub fn from_entries(prereduced: Vec<FormEntry>, reduced: Vec<FormEntry>) -> Catalog {
        let mut by_shape = BTreeMap::new();
        for (i, f) in prereduced.iter().enumerate() {
            by_shape.insert((f.points, f.edges.clone()), (false, i));
        }
        for (i, f) in reduced.iter().enumerate() {
            by_shape.insert((f.points, f.edges.clone()), (true, i));
        }
        Catalog { prereduced, reduced, by_shape }
    }

    pub fn prereduced(&self) -> &[FormEntry] {
        &self.prereduced
    }

    pub fn reduced(&self) -> &[FormEntry] {
        &self.reduced
    }

    pub fn entries(&self) -> impl Iterator<Item = &FormEntry> {
        self.prereduced.iter().chain(&self.reduced)
    }

    pub fn get(&self, id: &str) -> Result<&FormEntry> {
        self.entries().find(|f| f.id == id).ok_or_else(|| Error::UnknownForm(id.to_string()))
    }

    pub fn lookup(&self, canonical: &CanonicalForm) -> Option<&FormEntry> {
        let &(reduced, i) = self.by_shape.get(&(canonical.k, canonical.edges.clone()))?;
        Some(if reduced { &self.reduced[i] } else { &self.prereduced[i] })
    }

    /// Index of a reduced form in [`Catalog::reduced`].
    pub fn reduced_index(&self, canonical: &CanonicalForm) -> Option<usize> {
        match self.by_shape.get(&(canonical.k, canonical.edges.clone())) {
            Some(&(true, i)) => Some(i),
            _ => None,
        }
    }

    /// The reduced form of a genus-one tree.
    pub fn classify_tree(&self, t: &CircleTree) -> Result<&FormEntry> {
        let canonical = e_reduce(t)?.reduced.canonicalize();
        let i = self.reduced_index(&canonical).ok_or_else(|| {
            Error::Invariant(format!("reduced form {:?} of {t} is not in the catalog", canonical.edges))
        })?;
        Ok(&self.reduced[i])
    }

    pub fn half_period_forms(&self) -> Vec<&FormEntry> {
        self.reduced.iter().filter(|f| f.is_half_period()).collect()
    }

    /// `T3^6[5]`: the half-period reduced form equal to its own mirror.
    pub fn self_mirror_half_period(&self) -> &FormEntry {
        self.reduced.iter().find(|f| f.is_half_period() && f.mirror == f.id).expect("derived catalogs always pin one")
    }
}

fn prereduced_id(index: usize) -> String {
    format!("T2^{}", index + 1)
}

fn reduced_id(source: usize, bracket: usize) -> String {
    format!("T3^{}[{}]", source + 1, bracket)
}

/// Mirror image, brought back to canonical form.
pub fn mirror_of(c: &CanonicalForm) -> CanonicalForm {
    CircleGraph::from_sorted_unchecked(c.k, c.edges.clone()).reflect().canonicalize()
}

/// All perfect matchings of `1..=2m`, each as a sorted edge list.
pub fn perfect_matchings(m: usize) -> Vec<Vec<Edge>> {
    fn go(free: &mut Vec<usize>, current: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if free.is_empty() {
            let mut edges = current.clone();
            edges.sort_unstable();
            out.push(edges);
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            current.push(Edge::new(a, b));
            go(free, current, out);
            current.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    go(&mut (1..=2 * m).collect(), &mut Vec::new(), &mut out);
    out
}

/// Chords that can be added to a pre-reduced form singly: uncrossed once
/// added, and leaving every e-graph a lone chord.
pub fn slot_edges(form: &CircleGraph) -> Vec<Edge> {
    let n = form.n();
    let mut slots = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let c = Edge::new(a, b);
            if form.contains(c) || form.edges().iter().any(|f| f.crosses(c)) {
                continue;
            }
            let Ok(h) = form.with_edge(c) else { continue };
            let Ok(parts) = egraph_decomposition(&h) else { continue };
            if parts.len() == form.len() && parts.iter().all(|eg| eg.parallel.len() == 1 && eg.uncrossed.is_empty()) {
                slots.push(c);
            }
        }
    }
    slots
}

fn is_prereduced_candidate(g: &CircleGraph) -> bool {
    g.uncrossed_edges().is_empty()
        && g.parallel_classes().iter().all(|c| c.len() <= 2)
        && matches!(match_final_form(g).kind, FormKind::Form1 | FormKind::Form2)
}

/// Matchings whose chords are all crossed, whose parallel classes have at
/// most two chords and which reduce to Form 1 or Form 2, up to rotation.
pub fn generate_prereduced_forms() -> Result<Vec<FormEntry>> {
    let mut classes: BTreeSet<CanonicalForm> = BTreeSet::new();
    for m in 2..=MAX_CHORDS {
        for edges in perfect_matchings(m) {
            let g = CircleGraph::from_sorted_unchecked(2 * m, edges);
            if is_prereduced_candidate(&g) {
                classes.insert(g.canonicalize());
            }
        }
    }
    if classes.len() != PREREDUCED_SHAPES.len() {
        return Err(Error::CatalogDerivation(format!(
            "{} pre-reduced candidates instead of {}",
            classes.len(),
            PREREDUCED_SHAPES.len()
        )));
    }

    let mut slotted: Vec<(CanonicalForm, usize)> = Vec::new();
    for c in classes {
        let slots = slot_edges(&c.to_graph()?).len();
        slotted.push((c, slots));
    }
    let mut labeled: Vec<Option<(CanonicalForm, usize)>> = vec![None; PREREDUCED_SHAPES.len()];
    for (c, slots) in slotted {
        let index = PREREDUCED_SHAPES
            .iter()
            .position(|&shape| shape == (c.k, slots))
            .ok_or_else(|| Error::CatalogDerivation(format!("no label for {} points with {slots} slots", c.k)))?;
        if labeled[index].is_some() {
            return Err(Error::CatalogDerivation(format!("two candidates labeled {}", prereduced_id(index))));
        }
        labeled[index] = Some((c, slots));
    }
    let labeled: Vec<(CanonicalForm, usize)> = labeled.into_iter().map(|x| x.expect("all seven filled")).collect();

    let ids: BTreeMap<CanonicalForm, String> =
        labeled.iter().enumerate().map(|(i, (c, _))| (c.clone(), prereduced_id(i))).collect();
    let mut entries = Vec::new();
    for (i, (c, slots)) in labeled.into_iter().enumerate() {
        let mirror = ids
            .get(&mirror_of(&c))
            .cloned()
            .ok_or_else(|| Error::CatalogDerivation(format!("mirror of {} is not a candidate", prereduced_id(i))))?;
        entries.push(FormEntry {
            id: prereduced_id(i),
            points: c.k,
            edges: c.edges,
            period: c.period,
            source: None,
            mirror,
            slots: Some(slots),
        });
    }
    Ok(entries)
}

/// Every way to complete `form` into a tree with uncrossed chords whose
/// pre-reduced form is `form` and which is its own reduced form, up to
/// rotation.
pub fn reduced_completions(form: &FormEntry) -> Result<BTreeSet<CanonicalForm>> {
    let g = form.graph();
    let n = form.points;
    let candidates: Vec<Edge> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| Edge::new(a, b)))
        .filter(|&c| !g.contains(c) && !g.edges().iter().any(|f| f.crosses(c)))
        .collect();
    let need = n - form.edges.len() - 1;
    let target = form.canonical();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(need);
    choose(&candidates, need, 0, &mut chosen, &mut |extra: &[Edge]| {
        if extra.iter().enumerate().any(|(i, a)| extra[i + 1..].iter().any(|b| a.crosses(*b))) {
            return Ok(());
        }
        let mut edges = form.edges.clone();
        edges.extend_from_slice(extra);
        let h = CircleGraph::from_edges(n, edges)?;
        let Ok(t) = CircleTree::try_from(h) else { return Ok(()) };
        let Ok(r) = e_reduce(&t) else { return Ok(()) };
        if r.prereduced.canonicalize() == target && r.reduced == *t.graph() {
            found.insert(t.canonicalize());
        }
        Ok(())
    })?;
    Ok(found)
}

fn choose(
    pool: &[Edge],
    need: usize,
    from: usize,
    chosen: &mut Vec<Edge>,
    visit: &mut dyn FnMut(&[Edge]) -> Result<()>,
) -> Result<()> {
    if chosen.len() == need {
        return visit(chosen);
    }
    for i in from..pool.len() {
        if pool.len() - i < need - chosen.len() {
            break;
        }
        chosen.push(pool[i]);
        choose(pool, need, i + 1, chosen, visit)?;
        chosen.pop();
    }
    Ok(())
}

/// The reduced forms, labeled `T3^s[j]` within each source `s`.
///
/// Forms of full period take the first brackets in canonical order. Half
/// period forms follow: the smaller member of each mirror pair, then the
/// self-mirror forms, then the larger members.
pub fn generate_reduced_catalog(prereduced: &[FormEntry]) -> Result<Vec<FormEntry>> {
    let mut per_source: Vec<Vec<CanonicalForm>> = Vec::new();
    for (s, form) in prereduced.iter().enumerate() {
        let forms: Vec<CanonicalForm> = reduced_completions(form)?.into_iter().collect();
        if forms.len() != REDUCED_COUNTS[s] {
            return Err(Error::CatalogDerivation(format!(
                "{} reduced forms from {} instead of {}",
                forms.len(),
                form.id,
                REDUCED_COUNTS[s]
            )));
        }
        per_source.push(forms);
    }

    let mut ids: BTreeMap<CanonicalForm, String> = BTreeMap::new();
    let mut ordered: Vec<(usize, CanonicalForm)> = Vec::new();
    for (s, forms) in per_source.iter().enumerate() {
        let (half, full): (Vec<&CanonicalForm>, Vec<&CanonicalForm>) = forms.iter().partition(|c| 2 * c.period == c.k);
        let mut smaller = Vec::new();
        let mut selfs = Vec::new();
        let mut larger = Vec::new();
        for &c in &half {
            let m = mirror_of(c);
            match m.cmp(c) {
                core::cmp::Ordering::Greater => smaller.push(c),
                core::cmp::Ordering::Equal => selfs.push(c),
                core::cmp::Ordering::Less => larger.push(c),
            }
        }
        // Pair the larger members up in the order of their partners.
        larger.sort_by_key(|c| mirror_of(c));
        let order = full.into_iter().chain(smaller).chain(selfs).chain(larger);
        for (j, c) in order.enumerate() {
            ids.insert(c.clone(), reduced_id(s, j + 1));
            ordered.push((s, c.clone()));
        }
    }

    let mut entries = Vec::new();
    for (s, c) in ordered {
        let id = ids[&c].clone();
        let mirror = ids
            .get(&mirror_of(&c))
            .cloned()
            .ok_or_else(|| Error::CatalogDerivation(format!("mirror of {id} is not a reduced form")))?;
        entries.push(FormEntry {
            id,
            points: c.k,
            edges: c.edges,
            period: c.period,
            source: Some(prereduced[s].id.clone()),
            mirror,
            slots: None,
        });
    }

    let half: Vec<&FormEntry> = entries.iter().filter(|f| f.is_half_period()).collect();
    if half.len() != 5 {
        return Err(Error::CatalogDerivation(format!("{} half-period reduced forms instead of 5", half.len())));
    }
    let fixed: Vec<&str> = half.iter().filter(|f| f.mirror == f.id).map(|f| f.id.as_str()).collect();
    if fixed != ["T3^6[5]"] {
        return Err(Error::CatalogDerivation(format!("self-mirror half-period forms are {fixed:?}")));
    }
    Ok(entries)
}
