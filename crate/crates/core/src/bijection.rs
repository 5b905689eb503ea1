//! Game bijections and matchings.
//!
//! A [`GameBijection`] pairs a player permutation `π` with one strategy
//! bijection `τ_i : A_i -> B_{π(i)}` per source player. Bijections between
//! games form a groupoid under [`GameBijection::compose`] and
//! [`GameBijection::inverse`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::game::{Game, MixedProfile, PureProfile};
use crate::perm::{invert_slice, is_permutation, Permutation};

/// True when two handles denote the same game.
pub(crate) fn same_game(a: &Arc<Game>, b: &Arc<Game>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct GameBijection {
    source: Arc<Game>,
    target: Arc<Game>,
    players: Permutation,
    strategies: Vec<Vec<usize>>,
}

impl GameBijection {
    /// `strategies[i][k]` is the index, within target player `players(i)`,
    /// of the image of source player `i`'s strategy `k`.
    pub fn new(
        source: Arc<Game>,
        target: Arc<Game>,
        players: Permutation,
        strategies: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = source.num_players();
        if target.num_players() != n || players.len() != n {
            return Err(Error::NotABijection(format!(
                "player counts differ: {} source players, {} target players, map of length {}",
                n,
                target.num_players(),
                players.len()
            )));
        }
        if strategies.len() != n {
            return Err(Error::NotABijection(format!(
                "expected {n} strategy maps, got {}",
                strategies.len()
            )));
        }
        for (i, map) in strategies.iter().enumerate() {
            let j = players.apply(i);
            let (d, e) = (source.strategy_counts()[i], target.strategy_counts()[j]);
            if map.len() != d || d != e {
                return Err(Error::NotABijection(format!(
                    "player {} has {d} strategies but is sent to player {} with {e}",
                    source.players()[i],
                    target.players()[j]
                )));
            }
            if !is_permutation(map) {
                return Err(Error::NotABijection(format!(
                    "strategy map of player {} is not injective",
                    source.players()[i]
                )));
            }
        }
        Ok(GameBijection {
            source,
            target,
            players,
            strategies,
        })
    }

    pub(crate) fn new_unchecked(
        source: Arc<Game>,
        target: Arc<Game>,
        players: Permutation,
        strategies: Vec<Vec<usize>>,
    ) -> Self {
        GameBijection {
            source,
            target,
            players,
            strategies,
        }
    }

    pub fn identity(game: &Arc<Game>) -> Self {
        GameBijection {
            source: game.clone(),
            target: game.clone(),
            players: Permutation::identity(game.num_players()),
            strategies: game
                .strategy_counts()
                .iter()
                .map(|&d| (0..d).collect())
                .collect(),
        }
    }

    pub fn source(&self) -> &Arc<Game> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Game> {
        &self.target
    }

    pub fn player_map(&self) -> &Permutation {
        &self.players
    }

    pub fn strategy_maps(&self) -> &[Vec<usize>] {
        &self.strategies
    }

    /// `g.i`
    pub fn player_image(&self, i: usize) -> usize {
        self.players.apply(i)
    }

    /// `g.s_i`
    pub fn strategy_image(&self, i: usize, k: usize) -> usize {
        self.strategies[i][k]
    }

    pub fn is_identity(&self) -> bool {
        self.players.is_identity()
            && self
                .strategies
                .iter()
                .all(|m| m.iter().enumerate().all(|(k, &t)| k == t))
    }

    /// Fixes every strategy of every player it fixes.
    pub fn fixes_strategies_of(&self, i: usize) -> bool {
        self.strategies[i].iter().enumerate().all(|(k, &t)| k == t)
    }

    /// `h ∘ g` where `self = h`: apply `g` first.
    pub fn compose(&self, g: &GameBijection) -> Result<GameBijection> {
        if !same_game(&g.target, &self.source) {
            return Err(Error::GameMismatch);
        }
        let strategies = g
            .strategies
            .iter()
            .enumerate()
            .map(|(i, tau)| {
                let phi = &self.strategies[g.players.apply(i)];
                tau.iter().map(|&t| phi[t]).collect()
            })
            .collect();
        Ok(GameBijection {
            source: g.source.clone(),
            target: self.target.clone(),
            players: self.players.compose(&g.players),
            strategies,
        })
    }

    /// `(π⁻¹; (τ⁻¹_{π⁻¹(j)})_j)`
    pub fn inverse(&self) -> GameBijection {
        let inv = self.players.inverse();
        let strategies = (0..inv.len())
            .map(|j| invert_slice(&self.strategies[inv.apply(j)]))
            .collect();
        GameBijection {
            source: self.target.clone(),
            target: self.source.clone(),
            players: inv,
            strategies,
        }
    }

    pub(crate) fn act_unchecked(&self, s: &[usize]) -> Vec<usize> {
        let mut t = vec![0; s.len()];
        for (i, &k) in s.iter().enumerate() {
            t[self.players.apply(i)] = self.strategies[i][k];
        }
        t
    }

    /// `(g.s)_{g.i} = τ_i(s_i)`
    pub fn act_on_profile(&self, s: &PureProfile) -> Result<PureProfile> {
        self.source.check_profile(s)?;
        Ok(PureProfile(self.act_unchecked(s)))
    }

    /// `(g.σ)_{g.i}(τ_i(k)) = σ_i(k)`
    pub fn act_on_mixed(&self, sigma: &MixedProfile) -> Result<MixedProfile> {
        self.source.check_mixed(sigma)?;
        let mut rows: Vec<Vec<_>> = self
            .target
            .strategy_counts()
            .iter()
            .map(|&d| Vec::with_capacity(d))
            .collect();
        for (j, row) in rows.iter_mut().enumerate() {
            row.resize(self.target.strategy_counts()[j], crate::rational::Rational::zero());
        }
        for (i, probs) in sigma.rows().iter().enumerate() {
            let j = self.players.apply(i);
            for (k, p) in probs.iter().enumerate() {
                rows[j][self.strategies[i][k]] = p.clone();
            }
        }
        MixedProfile::new(rows)
    }

    /// Human-readable form, e.g. `(1 2); a_1->d_2, a_2->d_1; b_1->c_1, b_2->c_2`.
    pub fn describe(&self) -> String {
        let players = self
            .players
            .cycle_string(|i| self.source.players()[i].clone());
        let maps = self
            .strategies
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let j = self.players.apply(i);
                m.iter()
                    .enumerate()
                    .map(|(k, &t)| {
                        format!(
                            "{}->{}",
                            self.source.strategies(i)[k],
                            self.target.strategies(j)[t]
                        )
                    })
                    .join(", ")
            })
            .join("; ");
        format!("{players}; {maps}")
    }

    fn key(&self) -> (&Permutation, &Vec<Vec<usize>>) {
        (&self.players, &self.strategies)
    }
}

impl fmt::Debug for GameBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GameBijection({})", self.describe())
    }
}

impl PartialEq for GameBijection {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
            && same_game(&self.source, &other.source)
            && same_game(&self.target, &other.target)
    }
}

impl Eq for GameBijection {}

impl Hash for GameBijection {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

/// Canonical order: player map first, then strategy maps player by player.
/// Only meaningful between bijections over the same pair of games.
impl PartialOrd for GameBijection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GameBijection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Each player's strategies appear in exactly one tuple. Tuples are stored
/// ordered by player 0's strategy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    tuples: Vec<PureProfile>,
}

impl Matching {
    pub fn new(game: &Game, mut tuples: Vec<PureProfile>) -> Result<Self> {
        let counts = game.strategy_counts();
        let d = counts[0];
        if counts.iter().any(|&c| c != d) {
            return Err(Error::InvalidMatching(
                "players have different numbers of strategies".into(),
            ));
        }
        if tuples.len() != d {
            return Err(Error::InvalidMatching(format!(
                "expected {d} tuples, got {}",
                tuples.len()
            )));
        }
        for t in &tuples {
            game.check_profile(t)
                .map_err(|e| Error::InvalidMatching(e.to_string()))?;
        }
        for i in 0..game.num_players() {
            let column: Vec<usize> = tuples.iter().map(|t| t[i]).collect();
            if !is_permutation(&column) {
                return Err(Error::InvalidMatching(format!(
                    "player {} does not use each strategy exactly once",
                    game.players()[i]
                )));
            }
        }
        tuples.sort_by_key(|t| t[0]);
        Ok(Matching { tuples })
    }

    /// `{(k, k, .., k)}`; needs equal strategy counts.
    pub fn diagonal(game: &Game) -> Result<Self> {
        let d = game.strategy_counts()[0];
        let n = game.num_players();
        Matching::new(game, (0..d).map(|k| PureProfile(vec![k; n])).collect())
    }

    pub fn tuples(&self) -> &[PureProfile] {
        &self.tuples
    }

    /// `M_ij` as an index map from player `i`'s strategies to player `j`'s.
    pub fn pair_map(&self, i: usize, j: usize) -> Vec<usize> {
        let mut out = vec![0; self.tuples.len()];
        for t in &self.tuples {
            out[t[i]] = t[j];
        }
        out
    }

    /// For each player, the strategy map `M_{i,π(i)}`; validity against `game`
    /// is the caller's concern.
    fn induced_maps(&self, perm: &Permutation) -> Vec<Vec<usize>> {
        (0..perm.len())
            .map(|i| self.pair_map(i, perm.apply(i)))
            .collect()
    }

    fn check_for(&self, game: &Game) -> Result<()> {
        let n = game.num_players();
        let d = self.tuples.len();
        if game.strategy_counts().iter().any(|&c| c != d) || self.tuples.iter().any(|t| t.len() != n) {
            return Err(Error::InvalidMatching(
                "matching does not fit the game's shape".into(),
            ));
        }
        Ok(())
    }

    /// `M_π = (π; (M_{i,π(i)})_i)` as a self-bijection of `game`.
    pub fn induced_bijection(&self, game: &Arc<Game>, perm: &Permutation) -> Result<GameBijection> {
        self.check_for(game)?;
        if perm.len() != game.num_players() {
            return Err(Error::NotABijection(format!(
                "player permutation of length {} for {} players",
                perm.len(),
                game.num_players()
            )));
        }
        Ok(GameBijection::new_unchecked(
            game.clone(),
            game.clone(),
            perm.clone(),
            self.induced_maps(perm),
        ))
    }

    pub fn describe(&self, game: &Game) -> String {
        let parts = self
            .tuples
            .iter()
            .map(|t| format!("({})", game.profile_names(t).join(", ")))
            .join(", ");
        format!("{{{parts}}}")
    }
}

/// All matchings in canonical order: lexicographic by tuple list, tuple `k`
/// holding player 0's `k`-th strategy. With `equal_utility` set, only
/// matchings whose every tuple pays all players the same are kept.
pub fn enumerate_matchings(game: &Game, equal_utility: bool) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_matching(game, equal_utility, |m| {
        out.push(m);
        true
    });
    out
}

/// Streams matchings in canonical order; the visitor returns `false` to stop.
pub(crate) fn for_each_matching(game: &Game, equal_utility: bool, mut visit: impl FnMut(Matching) -> bool) {
    let counts = game.strategy_counts();
    let d = counts[0];
    if counts.iter().any(|&c| c != d) {
        return;
    }
    let n = game.num_players();
    let mut tuples: Vec<Vec<usize>> = (0..d)
        .map(|k| {
            let mut t = vec![0; n];
            t[0] = k;
            t
        })
        .collect();
    let mut used = vec![vec![false; d]; n];
    let mut stop = false;
    extend(game, equal_utility, &mut tuples, &mut used, 0, 1, &mut visit, &mut stop);
}

fn equal_payoffs(game: &Game, s: &[usize]) -> bool {
    let first = game.payoff(0, s);
    (1..game.num_players()).all(|i| game.payoff(i, s) == first)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    game: &Game,
    equal_utility: bool,
    tuples: &mut Vec<Vec<usize>>,
    used: &mut Vec<Vec<bool>>,
    k: usize,
    j: usize,
    visit: &mut impl FnMut(Matching) -> bool,
    stop: &mut bool,
) {
    if *stop {
        return;
    }
    let n = game.num_players();
    let d = tuples.len();
    if j == n {
        if equal_utility && !equal_payoffs(game, &tuples[k]) {
            return;
        }
        if k + 1 == d {
            let m = Matching {
                tuples: tuples.iter().cloned().map(PureProfile).collect(),
            };
            if !visit(m) {
                *stop = true;
            }
        } else {
            extend(game, equal_utility, tuples, used, k + 1, 1, visit, stop);
        }
        return;
    }
    for t in 0..d {
        if used[j][t] {
            continue;
        }
        used[j][t] = true;
        tuples[k][j] = t;
        extend(game, equal_utility, tuples, used, k, j + 1, visit, stop);
        used[j][t] = false;
        if *stop {
            return;
        }
    }
}

/// Number of matchings of `n` sets of size `d`: `(d!)^(n-1)`.
pub fn matching_count(n: usize, d: usize) -> u128 {
    let fact: u128 = (1..=d as u128).product();
    fact.pow((n - 1) as u32)
}

/// All bijections from `source` to `target`, unfiltered; for tests and
/// small brute-force checks.
pub fn all_bijections(source: &Arc<Game>, target: &Arc<Game>) -> Vec<GameBijection> {
    let n = source.num_players();
    if target.num_players() != n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for perm in Permutation::all(n) {
        let fits = (0..n).all(|i| source.strategy_counts()[i] == target.strategy_counts()[perm.apply(i)]);
        if !fits {
            continue;
        }
        let maps = source
            .strategy_counts()
            .iter()
            .map(|&d| (0..d).permutations(d).collect::<Vec<_>>())
            .multi_cartesian_product();
        for choice in maps {
            out.push(GameBijection::new_unchecked(
                source.clone(),
                target.clone(),
                perm.clone(),
                choice,
            ));
        }
    }
    out
}
