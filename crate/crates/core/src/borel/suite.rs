use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{borel_quotient, paths_to_leaf_vertex, phi_map, phi_map_by_lifting, reconstruct_tower};
use crate::covers::{CoverSpec, FibrePoint};
use crate::groups::{GroupHom, Letter, Word};
use crate::tower::{bond_intertwines, TowerCover, TowerSpec};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

/// Ordered check results. Mathematical failures are entries, never errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: impl Into<String>) {
        self.entries.push(CheckEntry { name: name.into(), status, witness: witness.into() });
    }

    fn record(&mut self, name: impl Into<String>, outcome: Result<String, String>) {
        match outcome {
            Ok(w) => self.push(name, Status::Pass, w),
            Err(w) => self.push(name, Status::Fail, w),
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Sampled `(word, word, fibre point)` triples per level.
    pub samples: usize,
    pub seed: u64,
    pub max_word_len: usize,
    /// Fibre size up to which cover isomorphisms are found by exhaustive search.
    pub exhaustive_limit: usize,
    /// Sampled `(u, ŷ)` pairs per level pair for the lifting cross-check of `Φ`.
    pub phi_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 100,
            seed: 0,
            max_word_len: 8,
            exhaustive_limit: super::EXHAUSTIVE_FIBRE_LIMIT,
            phi_samples: 16,
        }
    }
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    if rank == 0 {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen())).collect()
}

fn level_name(check: &str, i: usize) -> String {
    format!("{check}/level-{}", i + 1)
}

fn dense_witness(level: usize) -> String {
    format!("requires a dense leaf; level {} fails", level + 1)
}

fn sample_words(rng: &mut ChaCha8Rng, rank: usize, options: &SuiteOptions) -> Vec<(Word, Word)> {
    (0..options.samples)
        .map(|_| (random_word(rng, rank, options.max_word_len), random_word(rng, rank, options.max_word_len)))
        .collect()
}

/// Runs every check on a tower and collects the results.
///
/// Per level: group axioms, bonds, regularity, the fibre group via Θ,
/// density, the kernel chain, the action laws on sampled words, the
/// agreement of coset monodromy with path lifting and the intertwining of
/// bonds. Across levels: compatibility of θ, the profinite fibre group,
/// Borel bijectivity for every pair `i ≤ j` and the reconstruction.
pub fn theorem_suite(tower: &TowerSpec, options: &SuiteOptions) -> Report {
    let mut report = structure_report(tower, options);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x6c65_7665_6c73);
    let words = sample_words(&mut rng, tower.basis().rank(), options);
    for i in 0..tower.depth() {
        cover_checks(&tower.cover_spec(i), Some(i), &words, &mut rng, &mut report);
    }
    report.entries.extend(borel_report(tower, options).entries);
    report
}

/// The checks that concern the tower as a whole: group axioms, bonds,
/// compatibility of θ, the profinite fibre, density, the kernel chain,
/// intertwining and the cover maps between levels.
pub fn structure_report(tower: &TowerSpec, options: &SuiteOptions) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let depth = tower.depth();

    for i in 0..depth {
        let g = tower.level(i);
        report.record(
            level_name("group-axioms", i),
            g.check_axioms().map(|_| format!("{} of order {}", g.name(), g.order())).map_err(|e| e.to_string()),
        );
    }
    for i in 0..depth.saturating_sub(1) {
        let bond = tower.bond(i);
        let outcome = GroupHom::new(tower.level(i + 1), tower.level(i), bond.table().to_vec())
            .map_err(|e| e.to_string())
            .and_then(|h| {
                if h.is_surjective() {
                    Ok(format!("kernel of order {}", h.kernel().len()))
                } else {
                    Err(Error::BondNotSurjective { level: i }.to_string())
                }
            });
        report.record(format!("bond/level-{}-to-{}", i + 2, i + 1), outcome);
    }

    let words = sample_words(&mut rng, tower.basis().rank(), options);
    report.record("compatibility", check_compatibility(tower, &words));
    report.record("profinite-fibre", check_profinite_fibre(tower, &words, &mut rng));

    let dense = tower.dense_leaf_check();
    for (i, &ok) in dense.levels().iter().enumerate() {
        let g = tower.level(i);
        let outcome = if ok {
            Ok(format!("generator images generate {}", g.name()))
        } else {
            Err(format!(
                "level {}: generator images generate a subgroup of order {} in {} of order {}",
                i + 1,
                g.generated(tower.gen_images(i)).len(),
                g.name(),
                g.order()
            ))
        };
        report.record(level_name("dense-leaf", i), outcome);
    }

    match tower.kernel_chain() {
        Ok(chain) => {
            for k in chain {
                report.record(
                    level_name("kernel-chain", k.level),
                    Ok(format!(
                        "[π₁ : ker θ_{0}] = {1} = |G_{0}|; π₁/ker θ_{0} ≅ G_{0} via {1} transversal words \
                         (finite-depth form of π₁-profiniteness)",
                        k.level + 1,
                        k.index
                    )),
                );
            }
        }
        Err(e) => {
            for i in 0..depth {
                report.record(level_name("kernel-chain", i), Err(e.to_string()));
            }
        }
    }

    for i in 0..depth.saturating_sub(1) {
        let outcome = words
            .iter()
            .take(16)
            .try_for_each(|(w, _)| match bond_intertwines(tower, i, w) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("monodromy of {} is not intertwined", render(w))),
                Err(e) => Err(e.to_string()),
            })
            .map(|_| "r_i ∘ monodromy = monodromy ∘ r_i on sampled words".to_string());
        report.record(format!("bond-intertwining/level-{}-to-{}", i + 2, i + 1), outcome);
    }
    match tower.build_covers() {
        Ok(_) => report.push("tower-covers", Status::Pass, "every level is a covering, every bond a cover map"),
        Err(e) => report.push("tower-covers", Status::Fail, e.to_string()),
    }
    report
}

/// Regularity, the fibre group, the action laws and the agreement of the
/// two monodromy implementations for a single cover. The left-action laws
/// are skipped when the cover is not regular.
pub fn cover_report(spec: &CoverSpec, options: &SuiteOptions) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let words = sample_words(&mut rng, spec.basis().rank(), options);
    cover_checks(spec, None, &words, &mut rng, &mut report);
    report
}

fn cover_checks(
    spec: &CoverSpec,
    level: Option<usize>,
    words: &[(Word, Word)],
    rng: &mut ChaCha8Rng,
    report: &mut Report,
) {
    let name = |check: &str| match level {
        Some(i) => level_name(check, i),
        None => check.to_string(),
    };
    let points: Vec<FibrePoint> = (0..words.len()).map(|_| FibrePoint(rng.gen_range(0..spec.fibre_size()))).collect();
    let regular = check_regularity(spec);
    let is_regular = regular.is_ok();
    report.record(name("regularity"), regular);
    if is_regular {
        report.record(name("fibre-group"), check_fibre_group(spec));
        report.record(name("action-laws"), check_action_laws(spec, words, &points));
    } else {
        report.push(name("fibre-group"), Status::Skip, "needs a regular cover");
        report.record(name("right-action-law"), check_right_law(spec, words, &points));
        report.push(name("action-laws"), Status::Skip, "left action needs a regular cover");
    }
    report.record(name("monodromy-lifting"), check_lifting(spec, words, &points));
}

/// Borel bijectivity for every pair `i ≤ j` and the reconstruction of
/// every level. Everything fails with the offending level named when the
/// leaf is not dense.
pub fn borel_report(tower: &TowerSpec, options: &SuiteOptions) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x0062_6f72_656c);
    let depth = tower.depth();
    let first_sparse = tower.dense_leaf_check().first_failure();
    let covers = tower.build_covers().map_err(|e| e.to_string());
    for j in 0..depth {
        for i in 0..=j {
            let name = format!("borel/{}-{}", i + 1, j + 1);
            let outcome = match (&covers, first_sparse) {
                (_, Some(level)) => Err(dense_witness(level)),
                (Err(e), _) => Err(format!("tower covers unavailable: {e}")),
                (Ok(covers), None) => check_borel(tower, covers, i, j, options, &mut rng),
            };
            report.record(name, outcome);
        }
    }

    match reconstruct_tower(tower, options.exhaustive_limit) {
        Ok(r) => {
            for (i, iso) in r.isomorphisms.iter().enumerate() {
                let outcome = match iso {
                    Some(iso) => Ok(format!(
                        "rebuilt cover isomorphic to E_{} ({:?}, {} candidate bijections)",
                        i + 1,
                        iso.method,
                        iso.candidates
                    )),
                    None => Err(format!("no cover isomorphism to E_{}", i + 1)),
                };
                report.record(level_name("reconstruct", i), outcome);
            }
        }
        Err(Error::NotDense { level }) => {
            for i in 0..depth {
                report.record(level_name("reconstruct", i), Err(dense_witness(level)));
            }
        }
        Err(e) => {
            for i in 0..depth {
                report.record(level_name("reconstruct", i), Err(e.to_string()));
            }
        }
    }
    report
}

fn render(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters()
        .iter()
        .map(|l| {
            let name = crate::complex::generator_name(l.generator);
            if l.inverse {
                format!("{name}'")
            } else {
                name
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_compatibility(tower: &TowerSpec, words: &[(Word, Word)]) -> Result<String, String> {
    let depth = tower.depth();
    for (w, _) in words {
        let full = tower.theta(w, depth).map_err(|e| e.to_string())?;
        for d in 0..depth {
            let short = tower.theta(w, d).map_err(|e| e.to_string())?;
            if full.truncated(d) != short {
                return Err(format!("θ({}) at depth {d} is not the truncation of depth {depth}", render(w)));
            }
        }
    }
    Ok(format!("θ is compatible and truncation-natural on {} sampled words", words.len()))
}

fn check_profinite_fibre(tower: &TowerSpec, words: &[(Word, Word)], rng: &mut ChaCha8Rng) -> Result<String, String> {
    let depth = tower.depth();
    let e = tower.identity_element(depth).map_err(|e| e.to_string())?;
    let top = tower.level(depth - 1).order();
    for (w1, w2) in words {
        let (x, y) =
            (tower.theta(w1, depth).map_err(|e| e.to_string())?, tower.theta(w2, depth).map_err(|e| e.to_string())?);
        let xy = tower.fibre_mul(&x, &y).map_err(|e| e.to_string())?;
        if xy != tower.theta(&w1.concat(w2), depth).map_err(|e| e.to_string())? {
            return Err(format!("θ({})·θ({}) ≠ θ of the product", render(w1), render(w2)));
        }
        // arbitrary compatible tuples, not only those in the image of θ
        let z = tower.element_from_top(rng.gen_range(0..top), depth).map_err(|e| e.to_string())?;
        let zi = tower.fibre_inv(&z).map_err(|e| e.to_string())?;
        let mul = |a, b| tower.fibre_mul(a, b).map_err(|e| e.to_string());
        if !tower.is_compatible(&zi) || !tower.is_compatible(&mul(&xy, &z)?) {
            return Err(format!("compatible tuples not closed at {z}"));
        }
        if mul(&z, &zi)? != e || mul(&e, &z)? != z || mul(&mul(&x, &y)?, &z)? != mul(&x, &mul(&y, &z)?)? {
            return Err(format!("group axioms fail on ({x}, {y}, {z})"));
        }
    }
    Ok(format!("fibre of depth {depth} is a group; θ is a monoid map on {} sampled pairs", words.len()))
}

fn check_regularity(spec: &CoverSpec) -> Result<String, String> {
    match spec.is_regular() {
        Ok(true) => Ok(format!("deck group transitive on the {}-point fibre; K normal", spec.fibre_size())),
        Ok(false) => {
            let deck = spec.deck_group().map(|d| d.order()).unwrap_or(0);
            let witness = spec
                .group()
                .normality_witness(spec.subgroup())
                .map(|(g, k)| format!("; conjugating {k} by {g} leaves K"))
                .unwrap_or_default();
            Err(format!(
                "K of order {} is not normal{witness}; deck group of order {deck} is not transitive on {} points",
                spec.subgroup().len(),
                spec.fibre_size()
            ))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn check_fibre_group(spec: &CoverSpec) -> Result<String, String> {
    let fg = spec.fibre_group().map_err(|e| e.to_string())?;
    let deck = fg.deck();
    if !deck.is_free() || !deck.is_transitive() {
        return Err("deck action is not free and transitive".to_string());
    }
    if FibrePoint(fg.group().identity()) != spec.base_point() {
        return Err("base point is not the identity of the fibre group".to_string());
    }
    let carrier = deck.carrier();
    for a in carrier.elements() {
        for b in carrier.elements() {
            if fg.theta(carrier.mul(a, b)) != fg.mul(fg.theta(a), fg.theta(b)) {
                return Err(format!("Θ is not multiplicative at deck elements ({a}, {b})"));
            }
        }
    }
    Ok(format!("Θ: A(p) → F is a group isomorphism of order {}", carrier.order()))
}

fn check_action_laws(spec: &CoverSpec, words: &[(Word, Word)], points: &[FibrePoint]) -> Result<String, String> {
    let fg = spec.fibre_group().map_err(|e| format!("left action undefined: {e}"))?;
    let s = |e: Error| e.to_string();
    for ((w1, w2), &x) in words.iter().zip(points) {
        let w12 = w1.concat(w2);
        let right = |x, w: &Word| spec.monodromy(x, w).map_err(s);
        let left = |w: &Word, x| spec.left_action(w, x).map_err(s);
        if right(x, &w12)? != right(right(x, w1)?, w2)? {
            return Err(format!("right composition fails: x={}, w₁={}, w₂={}", x.0, render(w1), render(w2)));
        }
        if left(&w12, x)? != left(w1, left(w2, x)?)? {
            return Err(format!("left composition fails: x={}, w₁={}, w₂={}", x.0, render(w1), render(w2)));
        }
        if left(w1, right(x, w2)?)? != right(left(w1, x)?, w2)? {
            return Err(format!("mixed associativity fails: x={}, w₁={}, w₂={}", x.0, render(w1), render(w2)));
        }
        let base = spec.base_point();
        if left(w1, base)? != right(base, w1)? {
            return Err(format!("actions disagree at the base point for {}", render(w1)));
        }
        let g = FibrePoint(spec.cosets().coset_of(spec.phi(w1).map_err(s)?));
        if left(w1, x)? != fg.mul(g, x) || right(x, w1)? != fg.mul(x, g) {
            return Err(format!("actions are not the regular translations by θ({})", render(w1)));
        }
    }
    Ok(format!("right, left and mixed laws hold on {} sampled triples", words.len()))
}

fn check_right_law(spec: &CoverSpec, words: &[(Word, Word)], points: &[FibrePoint]) -> Result<String, String> {
    for ((w1, w2), &x) in words.iter().zip(points) {
        let right = |x, w: &Word| spec.monodromy(x, w).map_err(|e| e.to_string());
        if right(x, &w1.concat(w2))? != right(right(x, w1)?, w2)? {
            return Err(format!("right composition fails: x={}, w₁={}, w₂={}", x.0, render(w1), render(w2)));
        }
    }
    Ok(format!("right composition holds on {} sampled triples", words.len()))
}

fn check_lifting(spec: &CoverSpec, words: &[(Word, Word)], points: &[FibrePoint]) -> Result<String, String> {
    let graph = spec.build();
    graph.check_covering(spec.base()).map_err(|e| e.to_string())?;
    let base = spec.base();
    for ((w, _), &x) in words.iter().zip(points) {
        let path = spec.basis().word_to_path(base, w).map_err(|e| e.to_string())?;
        let start = graph.vertex(base.base_vertex(), x.0);
        let end = graph.lift_path(base, start, &path).map_err(|e| e.to_string())?;
        let expected = spec.monodromy(x, w).map_err(|e| e.to_string())?;
        if graph.split(end) != (base.base_vertex(), expected.0) {
            return Err(format!("lifting {} from {} disagrees with coset multiplication", render(w), x.0));
        }
    }
    Ok(format!("coset monodromy equals dart-by-dart lifting on {} samples", words.len()))
}

fn check_borel(
    tower: &TowerSpec,
    covers: &TowerCover,
    i: usize,
    j: usize,
    options: &SuiteOptions,
    rng: &mut ChaCha8Rng,
) -> Result<String, String> {
    let q = borel_quotient(tower, covers, i, j).map_err(|e| e.to_string())?;
    if !q.phi_constant_on_classes() {
        return Err("Φ is not constant on classes".to_string());
    }
    if !q.is_bijective() {
        return Err(format!(
            "{} classes for {} vertices of E_{}",
            q.class_count(),
            covers.level(i).vertex_count(),
            i + 1
        ));
    }
    let leaf = covers.level(j);
    for _ in 0..options.phi_samples {
        let u = rng.gen_range(0..tower.level(i).order());
        let y = rng.gen_range(0..leaf.vertex_count());
        let expected = phi_map(tower, covers, i, j, u, y).map_err(|e| e.to_string())?;
        for path in paths_to_leaf_vertex(tower, covers, j, y).map_err(|e| e.to_string())? {
            let lifted = phi_map_by_lifting(tower, covers, i, j, u, y, &path).map_err(|e| e.to_string())?;
            if lifted != expected {
                return Err(format!("Φ({u}, {y}) depends on the chosen path"));
            }
        }
    }
    Ok(format!("{} classes ↔ {} vertices of E_{}", q.class_count(), covers.level(i).vertex_count(), i + 1))
}
