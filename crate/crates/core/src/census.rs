//! Ordinal classes of strictly ordered 2x2 games.
//!
//! Each player's four payoffs are a permutation of `1..=4`, giving 576
//! games. Classes are counted twice: with player roles held fixed (row
//! player stays the row player) and with player swaps allowed.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::game::Game;
use crate::isomorphism::{are_equivalent_with, IsoMode, SearchOptions};
use crate::par::{self, Execution};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub games_enumerated: usize,
    /// Classes under ordinal isomorphisms that keep each player in place.
    pub class_count: usize,
    /// First enumerated member of each role-fixed class.
    pub representatives: Vec<Game>,
    pub class_sizes: Vec<usize>,
    /// Classes when the two players may also be exchanged.
    pub class_count_with_player_swaps: usize,
}

/// All 576 games in enumeration order: the row player's payoff permutation
/// varies slowest, each in lexicographic order over the cells.
pub fn census_games() -> Vec<Game> {
    let shape = Game::zeros(
        vec!["1".into(), "2".into()],
        vec![vec!["r1".into(), "r2".into()], vec!["c1".into(), "c2".into()]],
    )
    .expect("2x2 shape");
    let orders: Vec<Vec<Rational>> = (1..=4i64)
        .permutations(4)
        .map(|p| p.into_iter().map(Rational::from_integer).collect())
        .collect();
    orders
        .iter()
        .cartesian_product(&orders)
        .map(|(u, v)| shape.with_payoffs(vec![u.clone(), v.clone()]).expect("2x2 payoffs"))
        .collect()
}

pub fn ordinal_census_2x2() -> Census {
    ordinal_census_2x2_with(Execution::default())
}

pub fn ordinal_census_2x2_with(exec: Execution) -> Census {
    let games: Vec<Arc<Game>> = census_games().into_iter().map(Arc::new).collect();
    let fixed = partition(&games, true, exec);
    let swapped = partition(&games, false, exec);
    Census {
        games_enumerated: games.len(),
        class_count: fixed.len(),
        representatives: fixed.iter().map(|c| (*games[c[0]]).clone()).collect(),
        class_sizes: fixed.iter().map(Vec::len).collect(),
        class_count_with_player_swaps: swapped.len(),
    }
}

/// Multiset of payoff-rank pairs over the cells; invariant under strategy
/// relabelling, and under player swaps once folded to the smaller of the
/// two orientations.
fn invariant(game: &Game, role_preserving: bool) -> Vec<(u32, u32)> {
    let ranks = crate::isomorphism::rank_canonical(game);
    let as_u32 = |x: &Rational| x.numer().try_into().expect("small rank");
    let mut pairs: Vec<(u32, u32)> = (0..game.num_profiles())
        .map(|k| (as_u32(&ranks.payoff_row(0)[k]), as_u32(&ranks.payoff_row(1)[k])))
        .collect();
    pairs.sort_unstable();
    if role_preserving {
        return pairs;
    }
    let mut flipped: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
    flipped.sort_unstable();
    pairs.min(flipped)
}

/// Classes as lists of game indices, ordered by their first member.
fn partition(games: &[Arc<Game>], role_preserving: bool, exec: Execution) -> Vec<Vec<usize>> {
    let mut buckets: HashMap<Vec<(u32, u32)>, Vec<usize>> = HashMap::new();
    for (k, g) in games.iter().enumerate() {
        buckets.entry(invariant(g, role_preserving)).or_default().push(k);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let options = SearchOptions {
        execution: Execution::Sequential,
        role_preserving,
    };
    let mut classes: Vec<Vec<usize>> = par::map(exec, &buckets, |bucket| {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &k in bucket {
            match classes
                .iter_mut()
                .find(|c| are_equivalent_with(&games[c[0]], &games[k], IsoMode::Ordinal, options))
            {
                Some(c) => c.push(k),
                None => classes.push(vec![k]),
            }
        }
        classes
    })
    .into_iter()
    .flatten()
    .collect();
    classes.sort();
    classes
}
