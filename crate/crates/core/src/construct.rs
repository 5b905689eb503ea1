//! Building games with a prescribed symmetry group.
//!
//! The generated group acts on (player, profile) pairs by
//! `(i, s) -> (g.i, g.s)`. A game has every generator as an automorphism
//! exactly when its payoffs are constant on each orbit, so one value is
//! chosen per orbit.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijection::{same_game, GameBijection};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::perm::Permutation;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Values {
    /// One value per orbit, in orbit order.
    Supplied(Vec<Rational>),
    /// Distinct positive rationals drawn from a ChaCha8 stream.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub game: Game,
    /// Orbits of `(player, profile index)` pairs, each sorted, ordered by
    /// their smallest pair.
    pub orbits: Vec<Vec<(usize, usize)>>,
    pub values: Vec<Rational>,
    pub group_order: usize,
    pub player_transitive: bool,
}

/// Fills `shape` with payoffs constant on the orbits of the group
/// generated by `generators`.
pub fn construct_from_generators(
    shape: &Arc<Game>,
    generators: &[GameBijection],
    values: Values,
) -> Result<Construction> {
    for g in generators {
        if !same_game(g.source(), shape) || !same_game(g.target(), shape) {
            return Err(Error::GameMismatch);
        }
    }
    let orbits = orbits(shape, generators);
    let values = match values {
        Values::Supplied(v) => {
            if v.len() != orbits.len() {
                return Err(Error::ValueCount {
                    expected: orbits.len(),
                    actual: v.len(),
                });
            }
            v
        }
        Values::Seeded(seed) => seeded_values(seed, orbits.len()),
    };
    let mut rows = vec![vec![Rational::zero(); shape.num_profiles()]; shape.num_players()];
    for (orbit, value) in orbits.iter().zip(&values) {
        for &(i, s) in orbit {
            rows[i][s] = value.clone();
        }
    }
    let game = shape.with_payoffs(rows)?;
    Ok(Construction {
        game,
        orbits,
        values,
        group_order: closure_order(shape, generators),
        player_transitive: player_orbit(shape.num_players(), generators).len() == shape.num_players(),
    })
}

fn orbits(shape: &Game, generators: &[GameBijection]) -> Vec<Vec<(usize, usize)>> {
    let m = shape.num_profiles();
    let mut parent: Vec<usize> = (0..shape.num_players() * m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for s in shape.profiles() {
            let from = shape.profile_index(&s);
            let to = shape.profile_index(&g.act_unchecked(&s));
            for i in 0..shape.num_players() {
                let a = find(&mut parent, i * m + from);
                let b = find(&mut parent, g.player_image(i) * m + to);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    // Roots are the smallest member, so scanning in order creates orbits in
    // order of their smallest pair.
    let mut slot = vec![usize::MAX; parent.len()];
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
    for x in 0..parent.len() {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push((x / m, x % m));
    }
    out
}

fn player_orbit(n: usize, generators: &[GameBijection]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let j = g.player_image(i);
            if seen.insert(j) {
                queue.push_back(j);
            }
        }
    }
    debug_assert!(seen.len() <= n);
    seen
}

/// Order of the generated group, by breadth-first closure.
fn closure_order(shape: &Arc<Game>, generators: &[GameBijection]) -> usize {
    let identity = GameBijection::identity(shape);
    let mut seen: HashSet<(Permutation, Vec<Vec<usize>>)> = HashSet::new();
    let key = |g: &GameBijection| (g.player_map().clone(), g.strategy_maps().to_vec());
    seen.insert(key(&identity));
    let mut queue = VecDeque::from([identity]);
    while let Some(h) = queue.pop_front() {
        for g in generators {
            let next = g.compose(&h).expect("generators act on the shape");
            if seen.insert(key(&next)) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// `count` distinct positive rationals `p/q` with `1 <= q <= 16`.
pub fn seeded_values(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 1000.max(4 * count as i64);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.random_range(1..=top);
        let q = rng.random_range(1..=16);
        let x = Rational::new(p, q).expect("non-zero denominator");
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}
