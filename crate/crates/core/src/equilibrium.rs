//! Best responses, dominance and Nash equilibria.
//!
//! Mixed dominance and mixed equilibrium checks quantify over pure opponent
//! profiles and pure deviations only. Expected utility is multilinear, so the
//! pure profiles are the extreme points that decide both conditions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{validate_distribution, Game, MixedProfile, PureProfile};
use crate::rational::Rational;

/// `argmax_{s_i} u_i(s_i, s_{-i})`, ascending. `opponents` lists the other
/// players' strategy indices in player order.
pub fn pure_best_responses(game: &Game, player: usize, opponents: &[usize]) -> Result<Vec<usize>> {
    game.check_player(player)?;
    if opponents.len() + 1 != game.num_players() {
        return Err(Error::ProfileLength {
            expected: game.num_players() - 1,
            actual: opponents.len(),
        });
    }
    let probe = game.join(player, 0, opponents);
    game.check_profile(&probe)?;
    Ok(best_responses_unchecked(game, player, opponents))
}

fn best_responses_unchecked(game: &Game, player: usize, opponents: &[usize]) -> Vec<usize> {
    let d = game.strategy_counts()[player];
    let values: Vec<&Rational> = (0..d)
        .map(|k| game.payoff(player, &game.join(player, k, opponents)))
        .collect();
    let best = values.iter().max().expect("strategy sets are non-empty");
    (0..d).filter(|&k| values[k] == *best).collect()
}

fn without(profile: &[usize], player: usize) -> Vec<usize> {
    profile
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != player)
        .map(|(_, &k)| k)
        .collect()
}

/// `b(s) = { s' : s'_i in b_i(s_{-i}) for all i }`, in tensor order.
pub fn best_response_profiles(game: &Game, profile: &PureProfile) -> Result<Vec<PureProfile>> {
    game.check_profile(profile)?;
    let per_player: Vec<Vec<usize>> = (0..game.num_players())
        .map(|i| best_responses_unchecked(game, i, &without(profile, i)))
        .collect();
    let dims: Vec<usize> = per_player.iter().map(Vec::len).collect();
    Ok(crate::game::cartesian(&dims)
        .into_iter()
        .map(|pick| {
            PureProfile(
                pick.iter()
                    .enumerate()
                    .map(|(i, &k)| per_player[i][k])
                    .collect(),
            )
        })
        .collect())
}

fn is_pure_nash_unchecked(game: &Game, profile: &[usize]) -> bool {
    (0..game.num_players()).all(|i| {
        let current = game.payoff(i, profile);
        let mut dev = profile.to_vec();
        (0..game.strategy_counts()[i]).all(|k| {
            dev[i] = k;
            game.payoff(i, &dev) <= current
        })
    })
}

/// Fixed points of the pure best response correspondence, in tensor order.
pub fn pure_nash_equilibria(game: &Game) -> Vec<PureProfile> {
    game.profiles()
        .filter(|s| is_pure_nash_unchecked(game, s))
        .collect()
}

pub fn is_pure_nash(game: &Game, profile: &PureProfile) -> Result<bool> {
    game.check_profile(profile)?;
    Ok(is_pure_nash_unchecked(game, profile))
}

/// True iff `better` beats `worse` against every opponent profile.
pub fn strictly_dominates_pure(game: &Game, player: usize, better: usize, worse: usize) -> Result<bool> {
    game.check_strategy(player, better)?;
    game.check_strategy(player, worse)?;
    if better == worse {
        return Err(Error::SameStrategy);
    }
    Ok(game.opponent_profiles(player).iter().all(|opp| {
        game.payoff(player, &game.join(player, better, opp))
            > game.payoff(player, &game.join(player, worse, opp))
    }))
}

/// True iff the mixture `mix` earns strictly more than pure `worse` against
/// every pure opponent profile.
pub fn strictly_dominates_mixed(game: &Game, player: usize, mix: &[Rational], worse: usize) -> Result<bool> {
    game.check_strategy(player, worse)?;
    if mix.len() != game.strategy_counts()[player] {
        return Err(Error::InvalidDistribution {
            player,
            reason: format!(
                "expected {} probabilities, got {}",
                game.strategy_counts()[player],
                mix.len()
            ),
        });
    }
    validate_distribution(player, mix)?;
    Ok(game.opponent_profiles(player).iter().all(|opp| {
        let mixed: Rational = mix
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| p * game.payoff(player, &game.join(player, k, opp)))
            .sum();
        &mixed > game.payoff(player, &game.join(player, worse, opp))
    }))
}

/// All strict pure dominance pairs `(better, worse)` for a player.
pub fn dominance_pairs(game: &Game, player: usize) -> Result<Vec<(usize, usize)>> {
    game.check_player(player)?;
    let d = game.strategy_counts()[player];
    let mut out = Vec::new();
    for a in 0..d {
        for b in 0..d {
            if a != b && strictly_dominates_pure(game, player, a, b)? {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Expected utility of player `i` deviating to pure `k` against `sigma_{-i}`.
pub fn deviation_payoff(game: &Game, sigma: &MixedProfile, player: usize, k: usize) -> Result<Rational> {
    game.check_mixed(sigma)?;
    game.check_strategy(player, k)?;
    let mut rows = sigma.rows().to_vec();
    rows[player] = crate::game::point_mass_row(game.strategy_counts()[player], k);
    Ok(game.expected_unchecked(player, &rows))
}

/// No player gains by a pure deviation.
pub fn is_mixed_nash(game: &Game, sigma: &MixedProfile) -> Result<bool> {
    game.check_mixed(sigma)?;
    for i in 0..game.num_players() {
        let current = game.expected_unchecked(i, sigma.rows());
        for k in 0..game.strategy_counts()[i] {
            if deviation_payoff(game, sigma, i, k)? > current {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Support of the pure best responses to `sigma_{-i}` for every player.
pub fn best_response_sets_mixed(game: &Game, sigma: &MixedProfile) -> Result<Vec<BTreeSet<usize>>> {
    game.check_mixed(sigma)?;
    (0..game.num_players())
        .map(|i| {
            let values = (0..game.strategy_counts()[i])
                .map(|k| deviation_payoff(game, sigma, i, k))
                .collect::<Result<Vec<_>>>()?;
            let best = values.iter().max().expect("non-empty").clone();
            Ok((0..values.len()).filter(|&k| values[k] == best).collect())
        })
        .collect()
}
