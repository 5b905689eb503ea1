//! Finite normal-form games with exact payoffs.
//!
//! Payoffs for each player are stored as a flat tensor over the pure strategy
//! space. The tensor index of a profile `(a_1, .., a_n)` is
//! `sum_i idx(a_i) * prod_{j>i} d_j`, so the last player varies fastest.

use std::collections::HashSet;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PureProfile(pub Vec<usize>);

impl Deref for PureProfile {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for PureProfile {
    fn from(v: Vec<usize>) -> Self {
        PureProfile(v)
    }
}

/// One probability vector per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedProfile(Vec<Vec<Rational>>);

impl MixedProfile {
    /// Validates that every entry lies in `[0, 1]` and every row sums to 1.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        for (player, row) in rows.iter().enumerate() {
            validate_distribution(player, row)?;
        }
        Ok(MixedProfile(rows))
    }

    /// Point mass on a pure profile.
    pub fn point_mass(game: &Game, profile: &PureProfile) -> Result<Self> {
        game.check_profile(profile)?;
        Ok(MixedProfile(
            profile
                .iter()
                .zip(game.strategy_counts())
                .map(|(&k, &d)| point_mass_row(d, k))
                .collect(),
        ))
    }

    pub fn uniform(game: &Game) -> Self {
        MixedProfile(
            game.strategy_counts()
                .iter()
                .map(|&d| vec![Rational::new(1, d as i64).unwrap(); d])
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.0
    }

    pub fn row(&self, player: usize) -> &[Rational] {
        &self.0[player]
    }

    /// Probability of a pure profile, `prod_i sigma_i(s_i)`.
    pub fn probability(&self, profile: &[usize]) -> Rational {
        self.0
            .iter()
            .zip(profile)
            .map(|(row, &k)| row[k].clone())
            .product()
    }

    /// Replaces one player's row, validating the new row.
    pub fn with_row(&self, player: usize, row: Vec<Rational>) -> Result<Self> {
        validate_distribution(player, &row)?;
        let mut rows = self.0.clone();
        if player >= rows.len() {
            return Err(Error::PlayerIndex {
                index: player,
                players: rows.len(),
            });
        }
        rows[player] = row;
        Ok(MixedProfile(rows))
    }

    /// `p * self + (1 - p) * other`, row by row.
    pub fn mix(&self, other: &MixedProfile, p: &Rational) -> Result<Self> {
        if self.0.len() != other.0.len()
            || self.0.iter().zip(&other.0).any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::ProfileLength {
                expected: self.0.len(),
                actual: other.0.len(),
            });
        }
        if !p.is_probability() {
            return Err(Error::InvalidDistribution {
                player: 0,
                reason: format!("mixing weight {p} outside [0, 1]"),
            });
        }
        let q = Rational::one() - p;
        let rows = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| p * x + &q * y).collect())
            .collect();
        MixedProfile::new(rows)
    }
}

pub(crate) fn point_mass_row(len: usize, at: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| if k == at { Rational::one() } else { Rational::zero() })
        .collect()
}

pub(crate) fn validate_distribution(player: usize, row: &[Rational]) -> Result<()> {
    if row.is_empty() {
        return Err(Error::InvalidDistribution {
            player,
            reason: "empty probability vector".into(),
        });
    }
    if let Some(bad) = row.iter().find(|p| !p.is_probability()) {
        return Err(Error::InvalidDistribution {
            player,
            reason: format!("probability {bad} outside [0, 1]"),
        });
    }
    let total: Rational = row.iter().sum();
    if total != Rational::one() {
        return Err(Error::InvalidDistribution {
            player,
            reason: format!("probabilities sum to {total}"),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Game {
    title: Option<String>,
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
    counts: Vec<usize>,
    strides: Vec<usize>,
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    /// Builds and validates a game. Payoff rows are indexed in tensor order.
    pub fn new(
        players: Vec<String>,
        strategies: Vec<Vec<String>>,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = players.len();
        if n < 2 {
            return Err(Error::TooFewPlayers(n));
        }
        let mut seen = HashSet::new();
        for p in &players {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicatePlayer(p.clone()));
            }
        }
        if strategies.len() != n {
            return Err(Error::StrategyListCount {
                expected: n,
                actual: strategies.len(),
            });
        }
        for (player, names) in players.iter().zip(&strategies) {
            if names.is_empty() {
                return Err(Error::EmptyStrategySet {
                    player: player.clone(),
                });
            }
            let mut seen = HashSet::new();
            for s in names {
                if !seen.insert(s.as_str()) {
                    return Err(Error::DuplicateStrategy {
                        player: player.clone(),
                        name: s.clone(),
                    });
                }
            }
        }
        let counts: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let cells: usize = counts.iter().product();
        if payoffs.len() != n {
            return Err(Error::PayoffRowCount {
                expected: n,
                actual: payoffs.len(),
            });
        }
        for (player, row) in players.iter().zip(&payoffs) {
            if row.len() != cells {
                return Err(Error::PayoffLength {
                    player: player.clone(),
                    expected: cells,
                    actual: row.len(),
                });
            }
        }
        let mut strides = vec![1; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * counts[i + 1];
        }
        Ok(Game {
            title: None,
            players,
            strategies,
            counts,
            strides,
            payoffs,
        })
    }

    /// A game with the given shape and every payoff zero.
    pub fn zeros(players: Vec<String>, strategies: Vec<Vec<String>>) -> Result<Self> {
        let cells = strategies.iter().map(Vec::len).product();
        let n = players.len();
        Game::new(players, strategies, vec![vec![Rational::zero(); cells]; n])
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn title(&self) -> Option<&str> {
        self.title.as_deref()
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn strategies(&self, player: usize) -> &[String] {
        &self.strategies[player]
    }

    pub fn strategy_lists(&self) -> &[Vec<String>] {
        &self.strategies
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of pure strategy profiles.
    pub fn num_profiles(&self) -> usize {
        self.payoffs[0].len()
    }

    /// Player `i`'s payoff tensor in profile order.
    pub fn payoff_row(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    pub fn payoff_rows(&self) -> &[Vec<Rational>] {
        &self.payoffs
    }

    pub fn same_shape(&self, other: &Game) -> bool {
        self.players == other.players && self.strategies == other.strategies
    }

    /// Replaces the payoffs, keeping names and title.
    pub fn with_payoffs(&self, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        let mut g = Game::new(self.players.clone(), self.strategies.clone(), payoffs)?;
        g.title = self.title.clone();
        Ok(g)
    }

    /// Renames strategies; the new lists must keep the declared sizes.
    pub fn relabel_strategies(&self, strategies: Vec<Vec<String>>) -> Result<Self> {
        let mut g = Game::new(self.players.clone(), strategies, self.payoffs.clone())?;
        if g.counts != self.counts {
            return Err(Error::StrategyListCount {
                expected: self.counts.len(),
                actual: g.counts.len(),
            });
        }
        g.title = self.title.clone();
        Ok(g)
    }

    pub fn player_index(&self, name: &str) -> Result<usize> {
        self.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "player",
                name: name.to_string(),
            })
    }

    pub fn strategy_index(&self, player: usize, name: &str) -> Result<usize> {
        self.strategies[player]
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "strategy",
                name: name.to_string(),
            })
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.num_players() {
            return Err(Error::PlayerIndex {
                index: player,
                players: self.num_players(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_strategy(&self, player: usize, index: usize) -> Result<()> {
        self.check_player(player)?;
        if index >= self.counts[player] {
            return Err(Error::StrategyIndex {
                player,
                index,
                count: self.counts[player],
            });
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.num_players() {
            return Err(Error::ProfileLength {
                expected: self.num_players(),
                actual: profile.len(),
            });
        }
        for (player, &k) in profile.iter().enumerate() {
            self.check_strategy(player, k)?;
        }
        Ok(())
    }

    pub fn check_mixed(&self, sigma: &MixedProfile) -> Result<()> {
        if sigma.rows().len() != self.num_players() {
            return Err(Error::ProfileLength {
                expected: self.num_players(),
                actual: sigma.rows().len(),
            });
        }
        for (player, (row, &d)) in sigma.rows().iter().zip(&self.counts).enumerate() {
            if row.len() != d {
                return Err(Error::InvalidDistribution {
                    player,
                    reason: format!("expected {d} probabilities, got {}", row.len()),
                });
            }
        }
        Ok(())
    }

    /// Tensor index of a (valid) pure profile.
    pub fn profile_index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(k, s)| k * s).sum()
    }

    pub fn profile_at(&self, mut index: usize) -> PureProfile {
        let mut out = vec![0; self.num_players()];
        for (slot, &stride) in out.iter_mut().zip(&self.strides) {
            *slot = index / stride;
            index %= stride;
        }
        PureProfile(out)
    }

    /// All pure profiles in tensor order.
    pub fn profiles(&self) -> impl Iterator<Item = PureProfile> + '_ {
        (0..self.num_profiles()).map(|k| self.profile_at(k))
    }

    pub fn utility(&self, player: usize, profile: &[usize]) -> Result<&Rational> {
        self.check_player(player)?;
        self.check_profile(profile)?;
        Ok(&self.payoffs[player][self.profile_index(profile)])
    }

    /// Unchecked lookup for internal hot loops.
    pub(crate) fn payoff(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[player][self.profile_index(profile)]
    }

    /// `sum_s sigma(s) * u_i(s)`.
    pub fn expected_utility(&self, player: usize, sigma: &MixedProfile) -> Result<Rational> {
        self.check_player(player)?;
        self.check_mixed(sigma)?;
        Ok(self.expected_unchecked(player, sigma.rows()))
    }

    pub(crate) fn expected_unchecked(&self, player: usize, rows: &[Vec<Rational>]) -> Rational {
        let mut total = Rational::zero();
        for (index, u) in self.payoffs[player].iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let prob = self.profile_at(index)
                .iter()
                .enumerate()
                .try_fold(Rational::one(), |acc, (j, &k)| {
                    let p = &rows[j][k];
                    if p.is_zero() {
                        None
                    } else {
                        Some(acc * p)
                    }
                });
            if let Some(p) = prob {
                total = total + p * u;
            }
        }
        total
    }

    /// Profile formed by inserting `own` for `player` into opponents' choices.
    pub(crate) fn join(&self, player: usize, own: usize, opponents: &[usize]) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.num_players());
        s.extend_from_slice(&opponents[..player]);
        s.push(own);
        s.extend_from_slice(&opponents[player..]);
        s
    }

    /// All opponent profiles `s_{-i}` in tensor order.
    pub(crate) fn opponent_profiles(&self, player: usize) -> Vec<Vec<usize>> {
        let dims: Vec<usize> = self
            .counts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != player)
            .map(|(_, &d)| d)
            .collect();
        cartesian(&dims)
    }

    /// Human-readable profile, e.g. `(d, c)`.
    pub fn profile_names(&self, profile: &[usize]) -> Vec<&str> {
        profile
            .iter()
            .enumerate()
            .map(|(i, &k)| self.strategies[i][k].as_str())
            .collect()
    }
}

/// All index tuples of the given dimensions, last coordinate fastest.
pub(crate) fn cartesian(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    if total == 0 {
        return out;
    }
    let mut cur = vec![0; dims.len()];
    loop {
        out.push(cur.clone());
        let mut pos = dims.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < dims[pos] {
                break;
            }
            cur[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn prisoners_dilemma_from_table() {
        let g = fixtures::prisoners_dilemma_tabular();
        assert_eq!(g.num_players(), 2);
        assert_eq!(g.strategy_counts(), &[2, 2]);
        // u_2(d, c) = 4
        assert_eq!(g.utility(1, &[0, 1]).unwrap(), &r("4"));
    }

    #[test]
    fn three_player_lookup() {
        let g = fixtures::three_player_tabular();
        // u_2(a_2, b_1, c_2) = 5
        assert_eq!(g.utility(1, &[1, 0, 1]).unwrap(), &r("5"));
    }

    #[test]
    fn first_entry_is_origin_profile() {
        let g = fixtures::three_player_tabular();
        for i in 0..3 {
            assert_eq!(g.utility(i, &[0, 0, 0]).unwrap(), &g.payoff_row(i)[0]);
        }
    }

    #[test]
    fn minimal_single_strategy_game() {
        let g = Game::new(
            vec!["1".into(), "2".into()],
            vec![vec!["x".into()], vec!["y".into()]],
            vec![vec![r("0")], vec![r("0")]],
        )
        .unwrap();
        assert_eq!(g.num_profiles(), 1);
    }

    #[test]
    fn construction_errors() {
        let names = || vec![vec!["a".to_string(), "b".to_string()]; 2];
        let players = || vec!["1".to_string(), "2".to_string()];
        let err = Game::new(players(), names(), vec![vec![r("1"); 3], vec![r("1"); 4]]);
        assert!(matches!(err, Err(Error::PayoffLength { expected: 4, actual: 3, .. })));
        let err = Game::new(vec!["1".into()], vec![vec!["a".into()]], vec![vec![r("1")]]);
        assert_eq!(err, Err(Error::TooFewPlayers(1)));
        let dup = vec![vec!["a".to_string(), "a".to_string()], vec!["x".into(), "y".into()]];
        let err = Game::new(players(), dup, vec![vec![r("1"); 4]; 2]);
        assert!(matches!(err, Err(Error::DuplicateStrategy { .. })));
        let err = Game::new(players(), names(), vec![vec![r("1"); 4]]);
        assert!(matches!(err, Err(Error::PayoffRowCount { .. })));
    }

    #[test]
    fn utility_index_errors() {
        let g = fixtures::matching_pennies();
        assert!(g.utility(2, &[0, 0]).is_err());
        assert!(g.utility(0, &[0, 2]).is_err());
        assert!(g.utility(0, &[0]).is_err());
    }

    #[test]
    fn expected_utility_examples() {
        let g = fixtures::prisoners_dilemma_tabular();
        let sigma = MixedProfile::new(vec![
            vec![r("1/5"), r("4/5")],
            vec![r("1/2"), r("1/2")],
        ])
        .unwrap();
        assert_eq!(g.expected_utility(1, &sigma).unwrap(), r("11/5"));
        let mass = MixedProfile::point_mass(&g, &PureProfile(vec![0, 1])).unwrap();
        assert_eq!(g.expected_utility(1, &mass).unwrap(), r("4"));
        let mp = fixtures::matching_pennies();
        let uniform = MixedProfile::uniform(&mp);
        assert_eq!(mp.expected_utility(0, &uniform).unwrap(), r("0"));
    }

    #[test]
    fn mixed_profile_validation() {
        assert!(MixedProfile::new(vec![vec![r("1/2"), r("1/3")]]).is_err());
        assert!(MixedProfile::new(vec![vec![r("3/2"), r("-1/2")]]).is_err());
        let g = fixtures::matching_pennies();
        let short = MixedProfile::new(vec![vec![r("1")]]).unwrap();
        assert!(g.expected_utility(0, &short).is_err());
    }

    #[test]
    fn profile_index_round_trip() {
        let g = fixtures::three_player_tabular();
        for (k, s) in g.profiles().enumerate() {
            assert_eq!(g.profile_index(&s), k);
        }
        assert_eq!(g.profile_at(5).0, vec![1, 0, 1]);
    }
}
