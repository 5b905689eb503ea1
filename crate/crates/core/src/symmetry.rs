//! Automorphism groups and the symmetry classification of games.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bijection::{for_each_matching, same_game, GameBijection, Matching};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::isomorphism::{search_isomorphisms_with, verify_strict, IsoMode, Limit, SearchOptions};
use crate::par::{self, Execution};
use crate::perm::Permutation;

/// A set of strict automorphisms of one game, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    game: Arc<Game>,
    elements: Vec<GameBijection>,
}

impl SymmetryGroup {
    /// Checks that every element is an automorphism of `game` and that the
    /// set is a group.
    pub fn new(game: Arc<Game>, mut elements: Vec<GameBijection>) -> Result<Self> {
        for g in &elements {
            if !same_game(g.source(), &game) || !same_game(g.target(), &game) {
                return Err(Error::GameMismatch);
            }
            if !verify_strict(g) {
                return Err(Error::NotABijection(format!(
                    "{} is not an automorphism",
                    g.describe()
                )));
            }
        }
        elements.sort();
        elements.dedup();
        let group = SymmetryGroup { game, elements };
        if !group.verify_closure() {
            return Err(Error::NotABijection("elements do not form a group".into()));
        }
        Ok(group)
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn elements(&self) -> &[GameBijection] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GameBijection) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Identity present, closed under composition and inversion.
    pub fn verify_closure(&self) -> bool {
        self.contains(&GameBijection::identity(&self.game))
            && self.elements.iter().all(|g| {
                self.contains(&g.inverse())
                    && self
                        .elements
                        .iter()
                        .all(|h| h.compose(g).map(|c| self.contains(&c)).unwrap_or(false))
            })
    }
}

/// `Aut(game)`: every strict self-isomorphism.
pub fn automorphism_group(game: &Arc<Game>) -> SymmetryGroup {
    automorphism_group_with(game, Execution::default())
}

pub fn automorphism_group_with(game: &Arc<Game>, exec: Execution) -> SymmetryGroup {
    let options = SearchOptions {
        execution: exec,
        role_preserving: false,
    };
    SymmetryGroup {
        game: game.clone(),
        elements: search_isomorphisms_with(game, game, IsoMode::Strict, Limit::All, options),
    }
}

/// The distinct player permutations appearing in `group`, sorted.
pub fn player_projection(group: &SymmetryGroup) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = group.elements.iter().map(|g| g.player_map().clone()).collect();
    out.sort();
    out.dedup();
    out
}

fn transitive(n: usize, perms: &[Permutation]) -> bool {
    let images: HashSet<usize> = perms.iter().map(|p| p.apply(0)).collect();
    images.len() == n
}

pub fn is_player_transitive(group: &SymmetryGroup) -> bool {
    transitive(group.game.num_players(), &player_projection(group))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn is_player_n_transitive(group: &SymmetryGroup) -> bool {
    player_projection(group).len() == factorial(group.game.num_players())
}

/// Elements fixing player `i`.
pub fn stabilizer(group: &SymmetryGroup, i: usize) -> Result<SymmetryGroup> {
    group.game.check_player(i)?;
    Ok(SymmetryGroup {
        game: group.game.clone(),
        elements: group
            .elements
            .iter()
            .filter(|g| g.player_image(i) == i)
            .cloned()
            .collect(),
    })
}

/// Whenever an element fixes a player it fixes each of that player's
/// strategies.
pub fn is_strategy_trivial(group: &SymmetryGroup) -> bool {
    group.elements.iter().all(|g| {
        (0..group.game.num_players()).all(|i| g.player_image(i) != i || g.fixes_strategies_of(i))
    })
}

fn identical_strategy_names(game: &Game) -> bool {
    let lists = game.strategy_lists();
    lists.iter().all(|l| l == &lists[0])
}

/// Identical strategy lists, and the diagonal matching induces an
/// automorphism for every player transposition.
pub fn is_vnm_symmetric(game: &Arc<Game>) -> bool {
    vnm_matching(game).is_some()
}

fn vnm_matching(game: &Arc<Game>) -> Option<Matching> {
    if !identical_strategy_names(game) {
        return None;
    }
    let m = Matching::diagonal(game).ok()?;
    let n = game.num_players();
    let all = (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let g = m
                .induced_bijection(game, &Permutation::transposition(n, a, b))
                .expect("diagonal fits");
            verify_strict(&g)
        })
    });
    all.then_some(m)
}

/// `u_i(s_1..s_n) = u_{π(i)}(s_{π(1)}..s_{π(n)})` for every `π`, `i` and `s`,
/// checked literally over all of `S_n`.
pub fn is_dm_symmetric(game: &Game) -> bool {
    if !identical_strategy_names(game) {
        return false;
    }
    let n = game.num_players();
    Permutation::all(n).all(|p| {
        game.profiles().all(|s| {
            let moved: Vec<usize> = (0..n).map(|j| s[p.apply(j)]).collect();
            (0..n).all(|i| game.payoff(i, &s) == game.payoff(p.apply(i), &moved))
        })
    })
}

/// Caps on the matching search. Defaults: 6 players, 4 strategies each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub players: usize,
    pub strategies: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            players: 6,
            strategies: 4,
        }
    }
}

pub const LIMITS_VAR: &str = "GAMEFORGE_LIMITS";

impl SearchLimits {
    /// Defaults overridden by `GAMEFORGE_LIMITS` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_VAR) {
            Ok(text) => text.parse(),
            Err(_) => Ok(SearchLimits::default()),
        }
    }

    pub fn check(&self, game: &Game) -> Result<()> {
        let n = game.num_players();
        let d = game.strategy_counts().iter().copied().max().unwrap_or(0);
        if n > self.players || d > self.strategies {
            return Err(Error::LimitExceeded(format!(
                "standard symmetry search is limited to {} players and {} strategies per player \
                 (game has {n} and {d}); raise with {LIMITS_VAR}=players=<n>,strategies=<d>",
                self.players, self.strategies
            )));
        }
        Ok(())
    }
}

/// `players=<n>,strategies=<d>`; either key may be omitted.
impl FromStr for SearchLimits {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::LimitExceeded(format!("malformed limits {s:?}; expected players=<n>,strategies=<d>"));
        let mut limits = SearchLimits::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "players" => limits.players = value,
                "strategies" => limits.strategies = value,
                _ => return Err(bad()),
            }
        }
        Ok(limits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetryConfig {
    pub limits: SearchLimits,
    pub execution: Execution,
}

/// A matching `m` with `H_m = {π : M_π ∈ Aut}` acting transitively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardWitness {
    pub matching: Matching,
    pub players: Vec<Permutation>,
}

/// `{π : M_π is an automorphism}`, sorted. Panics if the result is not a
/// group, which would mean the matching homomorphism is broken.
pub fn matching_player_group(game: &Arc<Game>, m: &Matching) -> Result<Vec<Permutation>> {
    let n = game.num_players();
    let mut h = Vec::new();
    for p in Permutation::all(n) {
        if verify_strict(&m.induced_bijection(game, &p)?) {
            h.push(p);
        }
    }
    let set: HashSet<&Permutation> = h.iter().collect();
    assert!(
        h.iter().all(|a| set.contains(&a.inverse()) && h.iter().all(|b| set.contains(&a.compose(b)))),
        "permutations induced by a matching do not form a group"
    );
    Ok(h)
}

const CHUNK: usize = 256;

/// Streams equal-utility matchings in canonical order, evaluating each
/// chunk with `f`, and returns the first hit.
fn first_matching<R: Send>(
    game: &Game,
    exec: Execution,
    f: impl Fn(&Matching) -> Option<R> + Sync + Send,
) -> Option<R> {
    let mut found = None;
    let mut chunk = Vec::with_capacity(CHUNK);
    let flush = |chunk: &mut Vec<Matching>| {
        let hit = par::find_first(exec, chunk, &f);
        chunk.clear();
        hit
    };
    for_each_matching(game, true, |m| {
        chunk.push(m);
        if chunk.len() == CHUNK {
            found = flush(&mut chunk);
        }
        found.is_none()
    });
    if found.is_none() && !chunk.is_empty() {
        found = flush(&mut chunk);
    }
    found
}

/// The first matching, in canonical order, whose induced player group is
/// transitive.
pub fn standard_symmetric_witness(game: &Arc<Game>, config: &SymmetryConfig) -> Result<Option<StandardWitness>> {
    config.limits.check(game)?;
    let n = game.num_players();
    Ok(first_matching(game, config.execution, |m| {
        let players = matching_player_group(game, m).expect("matching fits game");
        transitive(n, &players).then(|| StandardWitness {
            matching: m.clone(),
            players,
        })
    }))
}

/// Some matching induces automorphisms for all of `S_n`. Since those
/// permutations form a group, the adjacent transpositions suffice.
pub fn has_n_transitive_strategy_trivial_group(game: &Arc<Game>, config: &SymmetryConfig) -> Result<bool> {
    config.limits.check(game)?;
    Ok(full_matching(game, config.execution).is_some())
}

fn full_matching(game: &Arc<Game>, exec: Execution) -> Option<Matching> {
    let n = game.num_players();
    first_matching(game, exec, |m| {
        (0..n.saturating_sub(1))
            .all(|a| {
                let g = m
                    .induced_bijection(game, &Permutation::transposition(n, a, a + 1))
                    .expect("matching fits game");
                verify_strict(&g)
            })
            .then(|| m.clone())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    NotSymmetric,
    NonFullyNonStandard,
    FullyNonStandard,
    NonFullyStandard,
    FullyStandard,
}

impl SymmetryClass {
    pub fn from_flags(symmetric: bool, fully: bool, standard: bool) -> Self {
        match (symmetric, fully, standard) {
            (false, _, _) => SymmetryClass::NotSymmetric,
            (true, false, false) => SymmetryClass::NonFullyNonStandard,
            (true, true, false) => SymmetryClass::FullyNonStandard,
            (true, false, true) => SymmetryClass::NonFullyStandard,
            (true, true, true) => SymmetryClass::FullyStandard,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SymmetryClass::NotSymmetric => "not symmetric",
            SymmetryClass::NonFullyNonStandard => "non-fully non-standard symmetric",
            SymmetryClass::FullyNonStandard => "fully non-standard symmetric",
            SymmetryClass::NonFullyStandard => "non-fully standard symmetric",
            SymmetryClass::FullyStandard => "fully standard symmetric",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub is_symmetric: bool,
    pub is_fully_symmetric: bool,
    pub is_standard_symmetric: bool,
    pub is_vnm: bool,
    pub is_dm: bool,
    pub has_n_transitive_strategy_trivial_group: bool,
    pub class: SymmetryClass,
    pub automorphism_count: usize,
    pub player_projection: Vec<Permutation>,
    pub standard_witness: Option<StandardWitness>,
    pub vnm_matching: Option<Matching>,
}

pub fn classify(game: &Arc<Game>, config: &SymmetryConfig) -> Result<SymmetryReport> {
    let aut = automorphism_group_with(game, config.execution);
    let projection = player_projection(&aut);
    let n = game.num_players();
    let is_symmetric = transitive(n, &projection);
    let is_fully_symmetric = projection.len() == factorial(n);
    let (standard_witness, n_transitive) = if is_symmetric {
        let witness = standard_symmetric_witness(game, config)?;
        let full = full_matching(game, config.execution).is_some();
        (witness, full)
    } else {
        (None, false)
    };
    let vnm_matching = vnm_matching(game);
    let is_standard_symmetric = standard_witness.is_some();
    Ok(SymmetryReport {
        is_symmetric,
        is_fully_symmetric,
        is_standard_symmetric,
        is_vnm: vnm_matching.is_some(),
        is_dm: is_dm_symmetric(game),
        has_n_transitive_strategy_trivial_group: n_transitive,
        class: SymmetryClass::from_flags(is_symmetric, is_fully_symmetric, is_standard_symmetric),
        automorphism_count: aut.len(),
        player_projection: projection,
        standard_witness,
        vnm_matching,
    })
}
