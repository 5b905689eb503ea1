//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.
//!
//! Oracles here are written independently of the library: brute-force
//! loops over profiles and bijections, hand-built listings, and byte
//! comparisons of CLI runs.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use gameforge::bijection::Matching;
use gameforge::census::{census_games, ordinal_census_2x2};
use gameforge::construct::{construct_from_generators, Values};
use gameforge::equilibrium::{best_response_sets_mixed, is_mixed_nash, pure_best_responses, pure_nash_equilibria};
use gameforge::format;
use gameforge::isomorphism::{
    affine_canonical, are_equivalent, are_equivalent_with, rank_canonical, search_isomorphisms, verify_cardinal,
    verify_ordinal, verify_strict, IsoMode, Limit, SearchOptions,
};
use gameforge::symmetry::{automorphism_group, classify, is_dm_symmetric, is_vnm_symmetric};
use gameforge::{fixtures, Game, GameBijection, MixedProfile, Permutation, PureProfile, Rational, SymmetryConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn arc(g: Game) -> Arc<Game> {
    Arc::new(g)
}

fn bij(a: &Arc<Game>, b: &Arc<Game>, players: Vec<usize>, maps: Vec<Vec<usize>>) -> GameBijection {
    GameBijection::new(a.clone(), b.clone(), Permutation::new(players).unwrap(), maps).unwrap()
}

fn config() -> SymmetryConfig {
    SymmetryConfig::default()
}

fn describe_all(list: &[GameBijection]) -> String {
    list.iter().map(|g| g.describe()).collect::<Vec<_>>().join(" | ")
}

// Shared oracle pieces.

/// `(g.s)_{π(i)} = τ_i(s_i)`, computed without the library.
fn act(players: &[usize], maps: &[Vec<usize>], s: &[usize]) -> Vec<usize> {
    let mut t = vec![0; s.len()];
    for (i, &k) in s.iter().enumerate() {
        t[players[i]] = maps[i][k];
    }
    t
}

fn all_profiles(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in counts {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn u(game: &Game, i: usize, s: &[usize]) -> Rational {
    game.utility(i, s).unwrap().clone()
}

fn parts(g: &GameBijection) -> (Vec<usize>, Vec<Vec<usize>>) {
    (g.player_map().images().to_vec(), g.strategy_maps().to_vec())
}

fn strict_oracle(a: &Game, b: &Game, g: &GameBijection) -> bool {
    let (p, m) = parts(g);
    all_profiles(a.strategy_counts())
        .iter()
        .all(|s| (0..a.num_players()).all(|i| u(a, i, s) == u(b, p[i], &act(&p, &m, s))))
}

/// Double loop over profile pairs: the order of every pair is kept.
fn ordinal_oracle(a: &Game, b: &Game, g: &GameBijection) -> bool {
    let (p, m) = parts(g);
    let profiles = all_profiles(a.strategy_counts());
    let images: Vec<Vec<usize>> = profiles.iter().map(|s| act(&p, &m, s)).collect();
    (0..a.num_players()).all(|i| {
        profiles.iter().zip(&images).all(|(s, gs)| {
            profiles
                .iter()
                .zip(&images)
                .all(|(t, gt)| (u(a, i, s) <= u(a, i, t)) == (u(b, p[i], gs) <= u(b, p[i], gt)))
        })
    })
}

/// A positive affine map per player, fitted from two cells with distinct
/// payoffs (or constant when the row is constant).
fn cardinal_oracle(a: &Game, b: &Game, g: &GameBijection) -> bool {
    let (p, m) = parts(g);
    let profiles = all_profiles(a.strategy_counts());
    (0..a.num_players()).all(|i| {
        let pairs: Vec<(Rational, Rational)> = profiles
            .iter()
            .map(|s| (u(a, i, s), u(b, p[i], &act(&p, &m, s))))
            .collect();
        let (x0, y0) = pairs[0].clone();
        match pairs.iter().find(|(x, _)| *x != x0) {
            None => pairs.iter().all(|(_, y)| *y == y0),
            Some((x1, y1)) => {
                let slope = (y1 - &y0) / (x1 - &x0);
                slope.is_positive() && pairs.iter().all(|(x, y)| *y == &slope * (x - &x0) + &y0)
            }
        }
    })
}

fn is_pure_ne_oracle(game: &Game, s: &[usize]) -> bool {
    (0..game.num_players()).all(|i| {
        (0..game.strategy_counts()[i]).all(|k| {
            let mut t = s.to_vec();
            t[i] = k;
            u(game, i, &t) <= u(game, i, s)
        })
    })
}

fn pure_ne_oracle(game: &Game) -> Vec<Vec<usize>> {
    all_profiles(game.strategy_counts())
        .into_iter()
        .filter(|s| is_pure_ne_oracle(game, s))
        .collect()
}

// Random games and bijections.

fn names(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|k| format!("{prefix}{k}")).collect()
}

fn game_from(counts: &[usize], tag: &str, cell: impl Fn(usize, &[usize]) -> Rational) -> Game {
    let n = counts.len();
    let players = (1..=n).map(|i| i.to_string()).collect();
    let lists = counts.iter().map(|&d| names(tag, d)).collect();
    let shape = Game::zeros(players, lists).unwrap();
    let rows = (0..n)
        .map(|i| shape.profiles().map(|s| cell(i, &s.0)).collect())
        .collect();
    shape.with_payoffs(rows).unwrap()
}

fn random_game(rng: &mut ChaCha8Rng, counts: &[usize], tag: &str, span: i64) -> Game {
    let n = counts.len();
    let total: usize = counts.iter().product();
    let values: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..total).map(|_| rng.random_range(-span..=span)).collect())
        .collect();
    let index = |s: &[usize]| s.iter().zip(counts).fold(0, |acc, (&k, &d)| acc * d + k);
    game_from(counts, tag, |i, s| int(values[i][index(s)]))
}

fn random_counts(rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = rng.random_range(2..=3);
    (0..n).map(|_| rng.random_range(1..=3)).collect()
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A random bijection out of `a`, with the target shape it needs.
fn random_map(rng: &mut ChaCha8Rng, a: &Game) -> (Vec<usize>, Vec<Vec<usize>>, Vec<usize>) {
    let n = a.num_players();
    let p = random_perm(rng, n);
    let maps = a.strategy_counts().iter().map(|&d| random_perm(rng, d)).collect();
    let mut counts = vec![0; n];
    for i in 0..n {
        counts[p[i]] = a.strategy_counts()[i];
    }
    (p, maps, counts)
}

/// The game that makes `(p; maps)` a strict isomorphism out of `a`.
fn transport(a: &Game, p: &[usize], maps: &[Vec<usize>], counts: &[usize], tag: &str) -> Game {
    let n = a.num_players();
    let inv_p = {
        let mut v = vec![0; n];
        for (i, &j) in p.iter().enumerate() {
            v[j] = i;
        }
        v
    };
    game_from(counts, tag, |j, t| {
        let i = inv_p[j];
        let mut s = vec![0; n];
        for (src, &pj) in p.iter().enumerate() {
            s[src] = maps[src].iter().position(|&x| x == t[pj]).unwrap();
        }
        u(a, i, &s)
    })
}

fn random_affine(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let a = Rational::new(rng.random_range(1..=9), rng.random_range(1..=5)).unwrap();
    let b = Rational::new(rng.random_range(-20..=20), rng.random_range(1..=3)).unwrap();
    (a, b)
}

fn map_rows(game: &Game, f: impl Fn(usize, &Rational) -> Rational) -> Game {
    let rows = game
        .payoff_rows()
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|x| f(i, x)).collect())
        .collect();
    game.with_payoffs(rows).unwrap()
}

/// Strictly increasing and not affine on more than two points.
fn cube_plus(x: &Rational) -> Rational {
    x * x * x + int(10) * x
}

// Criteria.

fn criterion_1() -> Check {
    let pd = fixtures::prisoners_dilemma_tabular();
    let sigma = MixedProfile::new(vec![vec![r("1/5"), r("4/5")], vec![r("1/2"), r("1/2")]]).unwrap();
    let got = pd.expected_utility(1, &sigma).map_err(|e| e.to_string())?;
    // Oracle: sum over the four cells by hand.
    let mut oracle = Rational::zero();
    for s in all_profiles(&[2, 2]) {
        oracle = oracle + sigma.row(0)[s[0]].clone() * sigma.row(1)[s[1]].clone() * u(&pd, 1, &s);
    }
    ensure(got == r("11/5") && oracle == r("11/5"), || format!("u_2 = {got}, oracle {oracle}"))?;
    let (out, code) = common::run(&["payoff", "pd_tabular.game", "--mixed", "pd_tabular.mix", "--player", "2"]);
    ensure(code == 0 && out.contains("11/5"), || format!("cli gave exit {code}: {out}"))
}

fn criterion_2() -> Check {
    let a = arc(fixtures::isomorphism_source());
    let b = arc(fixtures::isomorphism_target());
    // π swaps the players, τ_1: a_1 -> d_2, a_2 -> d_1, τ_2: b_1 -> c_1, b_2 -> c_2.
    let g = bij(&a, &b, vec![1, 0], vec![vec![1, 0], vec![0, 1]]);
    ensure(verify_strict(&g) && strict_oracle(&a, &b, &g), || "listed bijection is not strict".into())?;
    let (_, code) = common::run(&["iso", "iso_a.game", "iso_b.game", "--bijection", "iso_a_to_iso_b.bij"]);
    ensure(code == 0, || format!("cli check exit {code}"))?;

    let pa = arc(fixtures::prisoners_dilemma());
    let pb = arc(fixtures::prisoners_dilemma_relabelled());
    let mut listed = vec![
        bij(&pa, &pb, vec![0, 1], vec![vec![0, 1], vec![1, 0]]),
        bij(&pa, &pb, vec![1, 0], vec![vec![1, 0], vec![0, 1]]),
    ];
    listed.sort();
    let found = search_isomorphisms(&pa, &pb, IsoMode::Strict, Limit::All);
    ensure(found == listed, || format!("search gave {}", describe_all(&found)))?;
    // Every bijection, checked by the oracle, picks out the same two.
    let mut brute: Vec<GameBijection> = gameforge::bijection::all_bijections(&pa, &pb)
        .into_iter()
        .filter(|g| strict_oracle(&pa, &pb, g))
        .collect();
    brute.sort();
    ensure(brute == listed, || format!("brute force gave {}", describe_all(&brute)))?;
    let (out, code) = common::run(&["iso", "pd_a.game", "pd_b.game", "--all"]);
    ensure(code == 0 && found.iter().all(|g| out.contains(&g.describe())), || format!("cli --all: {out}"))
}

fn aut_equals(game: Game, listed: impl Fn(&Arc<Game>) -> Vec<GameBijection>) -> Check {
    let game = arc(game);
    let mut expected = listed(&game);
    expected.sort();
    let aut = automorphism_group(&game);
    ensure(aut.elements() == expected.as_slice(), || {
        format!("{}: got {}", game.title().unwrap_or(""), describe_all(aut.elements()))
    })
}

fn criterion_3() -> Check {
    aut_equals(fixtures::prisoners_dilemma(), |g| {
        vec![bij(g, g, vec![0, 1], vec![vec![0, 1]; 2]), bij(g, g, vec![1, 0], vec![vec![0, 1]; 2])]
    })?;
    aut_equals(fixtures::matching_pennies(), |g| {
        vec![
            bij(g, g, vec![0, 1], vec![vec![0, 1], vec![0, 1]]),
            bij(g, g, vec![0, 1], vec![vec![1, 0], vec![1, 0]]),
            bij(g, g, vec![1, 0], vec![vec![0, 1], vec![1, 0]]),
            bij(g, g, vec![1, 0], vec![vec![1, 0], vec![0, 1]]),
        ]
    })?;
    aut_equals(fixtures::non_fully_standard_three_player(), |g| {
        vec![
            bij(g, g, vec![0, 1, 2], vec![vec![0, 1]; 3]),
            bij(g, g, vec![1, 2, 0], vec![vec![0, 1]; 3]),
            bij(g, g, vec![2, 0, 1], vec![vec![0, 1]; 3]),
        ]
    })
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let census = ordinal_census_2x2();
    let elapsed = start.elapsed();
    ensure(census.games_enumerated == 576 && census.class_count == 144, || {
        format!("{} games, {} classes", census.games_enumerated, census.class_count)
    })?;
    ensure(census.class_sizes.iter().sum::<usize>() == 576, || "class sizes do not cover the games".into())?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))
}

fn label(game: Game) -> Result<&'static str, String> {
    classify(&arc(game), &config()).map(|r| r.class.label()).map_err(|e| e.to_string())
}

fn criterion_5() -> Check {
    let cases = [
        (fixtures::fully_standard_three_player(), "fully standard symmetric"),
        (fixtures::non_fully_standard_three_player(), "non-fully standard symmetric"),
        (fixtures::non_fully_non_standard_four_player_a(), "non-fully non-standard symmetric"),
        (fixtures::non_fully_non_standard_four_player_b(), "non-fully non-standard symmetric"),
        (fixtures::fully_non_standard_four_player(), "fully non-standard symmetric"),
        (fixtures::matching_pennies(), "fully non-standard symmetric"),
    ];
    for (game, want) in cases {
        let title = game.title().unwrap_or("").to_string();
        let got = label(game)?;
        ensure(got == want, || format!("{title}: {got}, expected {want}"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let rps = fixtures::rock_paper_scissors();
    ensure(pure_nash_equilibria(&rps).is_empty() && pure_ne_oracle(&rps).is_empty(), || {
        "rock-paper-scissors has a pure equilibrium".into()
    })?;
    let cheng = fixtures::cheng_counterexample();
    ensure(pure_nash_equilibria(&cheng).is_empty() && pure_ne_oracle(&cheng).is_empty(), || {
        "counterexample has a pure equilibrium".into()
    })?;
    let got = label(cheng)?;
    ensure(got == "non-fully standard symmetric", || format!("counterexample classified {got}"))?;
    let pd = fixtures::prisoners_dilemma();
    let ne = pure_nash_equilibria(&pd);
    ensure(ne == vec![PureProfile(vec![1, 1])] && pure_ne_oracle(&pd) == vec![vec![1, 1]], || {
        format!("PD equilibria {ne:?}")
    })
}

fn criterion_7() -> Check {
    for (game, vnm, dm) in [(fixtures::vnm_three_player(), true, false), (fixtures::vnm_two_player(), true, true)] {
        let game = arc(game);
        let report = classify(&game, &config()).map_err(|e| e.to_string())?;
        let (v, d) = (is_vnm_symmetric(&game), is_dm_symmetric(&game));
        ensure(v == vnm && d == dm && report.is_vnm == vnm && report.is_dm == dm, || {
            format!("{}: vnm {v}, dm {d}", game.title().unwrap_or(""))
        })?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    for n in 2..=4 {
        let shape = arc(game_from(&vec![2; n], "x", |_, _| Rational::zero()));
        let m = Matching::diagonal(&shape).map_err(|e| e.to_string())?;
        let generators: Vec<GameBijection> = [Permutation::transposition(n, 0, 1), Permutation::rotation(n)]
            .iter()
            .map(|p| m.induced_bijection(&shape, p).unwrap())
            .collect();
        for seed in 0..100 {
            let c = construct_from_generators(&shape, &generators, Values::Seeded(seed)).map_err(|e| e.to_string())?;
            let oracle = pure_ne_oracle(&c.game);
            ensure(!oracle.is_empty(), || format!("n = {n}, seed {seed}: no pure equilibrium"))?;
            let lib: Vec<Vec<usize>> = pure_nash_equilibria(&c.game).into_iter().map(|p| p.0).collect();
            ensure(lib == oracle, || format!("n = {n}, seed {seed}: library and oracle disagree"))?;
        }
    }
    Ok(())
}

fn groupoid_laws(rng: &mut ChaCha8Rng) -> Check {
    let mut composites = 0;
    for round in 0..400 {
        let counts = random_counts(rng);
        let a = random_game(rng, &counts, "a", 4);
        let (p1, m1, c1) = random_map(rng, &a);
        let b = transport(&a, &p1, &m1, &c1, "b");
        let (p2, m2, c2) = random_map(rng, &b);
        let c = transport(&b, &p2, &m2, &c2, "c");
        let (p3, m3, c3) = random_map(rng, &c);
        let d = transport(&c, &p3, &m3, &c3, "d");
        let (a, b, c, d) = (arc(a), arc(b), arc(c), arc(d));
        let g = bij(&a, &b, p1, m1);
        let h = bij(&b, &c, p2, m2);
        let k = bij(&c, &d, p3, m3);
        let hg = h.compose(&g).unwrap();
        let kh = k.compose(&h).unwrap();
        let left = k.compose(&hg).unwrap();
        let right = kh.compose(&g).unwrap();
        composites += 4;
        let at = || format!("round {round}");
        ensure(left == right, || format!("{}: associativity", at()))?;
        ensure(GameBijection::identity(&b).compose(&g).unwrap() == g, || format!("{}: left identity", at()))?;
        ensure(g.compose(&GameBijection::identity(&a)).unwrap() == g, || format!("{}: right identity", at()))?;
        ensure(g.inverse().compose(&g).unwrap().is_identity(), || format!("{}: left inverse", at()))?;
        ensure(g.compose(&g.inverse()).unwrap().is_identity(), || format!("{}: right inverse", at()))?;
        ensure(hg.inverse() == g.inverse().compose(&h.inverse()).unwrap(), || format!("{}: inverse of composite", at()))?;
        for s in all_profiles(a.strategy_counts()) {
            let s = PureProfile(s);
            let via = h.act_on_profile(&g.act_on_profile(&s).unwrap()).unwrap();
            ensure(hg.act_on_profile(&s).unwrap() == via, || format!("{}: action of composite", at()))?;
        }
        for (x, src, dst) in [(&hg, &a, &c), (&left, &a, &d), (&kh, &b, &d)] {
            ensure(verify_strict(x) && strict_oracle(src, dst, x), || format!("{}: composite not strict", at()))?;
        }
    }
    ensure(composites >= 1000, || format!("only {composites} composites"))
}

fn inclusion_chain(rng: &mut ChaCha8Rng) -> Check {
    let mut witnesses = 0;
    for round in 0..250 {
        let counts = random_counts(rng);
        let a = random_game(rng, &counts, "a", 3);
        let (p, m, cb) = random_map(rng, &a);
        let b = transport(&a, &p, &m, &cb, "b");
        let n = a.num_players();
        let affine: Vec<(Rational, Rational)> = (0..n).map(|_| random_affine(rng)).collect();
        let card = map_rows(&b, |j, x| &affine[j].0 * x + &affine[j].1);
        let ord = map_rows(&b, |_, x| cube_plus(x));
        let a = arc(a);
        let at = || format!("round {round}");
        for (target, strict, cardinal) in [(b, true, true), (card, false, true), (ord, false, false)] {
            let target = arc(target);
            let g = bij(&a, &target, p.clone(), m.clone());
            witnesses += 1;
            let s = verify_strict(&g);
            let c = verify_cardinal(&g);
            let o = verify_ordinal(&g);
            ensure(s == strict_oracle(&a, &target, &g), || format!("{}: strict disagrees with oracle", at()))?;
            ensure(c.is_some() == cardinal_oracle(&a, &target, &g), || format!("{}: cardinal disagrees", at()))?;
            ensure(o == ordinal_oracle(&a, &target, &g), || format!("{}: ordinal disagrees", at()))?;
            ensure(!strict || s, || format!("{}: strict witness rejected", at()))?;
            ensure(!cardinal || c.is_some(), || format!("{}: cardinal witness rejected", at()))?;
            ensure(o, || format!("{}: ordinal witness rejected", at()))?;
            ensure(!s || c.is_some(), || format!("{}: strict but not cardinal", at()))?;
            ensure(c.is_none() || o, || format!("{}: cardinal but not ordinal", at()))?;
            if let Some(w) = c {
                for x in all_profiles(a.strategy_counts()) {
                    let y = act(&p, &m, &x);
                    for (i, &j) in p.iter().enumerate() {
                        ensure(w.apply(i, &u(&a, i, &x)) == u(&target, j, &y), || {
                            format!("{}: affine witness does not map payoffs", at())
                        })?;
                    }
                }
            }
        }
        // An arbitrary bijection into the cardinal image still respects the chain.
        let target = arc(map_rows(&a, |j, x| &affine[j % affine.len()].0 * x));
        let maps: Vec<Vec<usize>> = a.strategy_counts().iter().map(|&d| random_perm(rng, d)).collect();
        let g = bij(&a, &target, (0..n).collect(), maps);
        let (s, c, o) = (verify_strict(&g), verify_cardinal(&g).is_some(), verify_ordinal(&g));
        ensure((!s || c) && (!c || o), || format!("{}: chain broken on arbitrary bijection", at()))?;
    }
    ensure(witnesses >= 200, || format!("only {witnesses} witnesses"))
}

fn census_oracle(rng: &mut ChaCha8Rng) -> Check {
    let games: Vec<Arc<Game>> = census_games().into_iter().map(Arc::new).collect();
    // Oracle: try all eight bijections between 2x2 games directly.
    let equivalent = |x: &Arc<Game>, y: &Arc<Game>, swaps: bool| -> bool {
        let players: &[&[usize]] = if swaps { &[&[0, 1], &[1, 0]] } else { &[&[0, 1]] };
        players.iter().any(|p| {
            [[0, 1], [1, 0]].iter().any(|t1| {
                [[0, 1], [1, 0]].iter().any(|t2| {
                    let g = bij(x, y, p.to_vec(), vec![t1.to_vec(), t2.to_vec()]);
                    ordinal_oracle(x, y, &g)
                })
            })
        })
    };

    // Union-find over the oracle relation reproduces the class counts.
    let count = |swaps: bool| {
        let mut rep: Vec<usize> = Vec::new();
        for (i, g) in games.iter().enumerate() {
            if !rep.iter().any(|&j| equivalent(&games[j], g, swaps)) {
                rep.push(i);
            }
        }
        rep.len()
    };
    let fixed = count(false);
    let swapped = count(true);
    ensure(fixed == 144 && swapped == 78, || format!("oracle finds {fixed} role-fixed and {swapped} swap classes"))?;
    let census = ordinal_census_2x2();
    ensure(census.class_count_with_player_swaps == swapped, || {
        format!("census {} swap classes, oracle {swapped}", census.class_count_with_player_swaps)
    })?;

    let role_fixed = SearchOptions {
        role_preserving: true,
        ..SearchOptions::default()
    };
    let mut pairs = 0;
    let mut positives = 0;
    while pairs < 5000 {
        let x = &games[rng.random_range(0..games.len())];
        // Half the pairs are relabellings of x, so both answers get exercised.
        let y = if pairs % 2 == 0 {
            &games[rng.random_range(0..games.len())]
        } else {
            let t1 = random_perm(rng, 2);
            let t2 = random_perm(rng, 2);
            let p = random_perm(rng, 2);
            let moved = transport(x, &p, &[t1, t2], &[2, 2], "z");
            let target = moved.payoff_rows().to_vec();
            games.iter().find(|g| g.payoff_rows() == target.as_slice()).unwrap()
        };
        let oracle_any = equivalent(x, y, true);
        let oracle_fixed = equivalent(x, y, false);
        positives += oracle_any as usize;
        ensure(are_equivalent(x, y, IsoMode::Ordinal) == oracle_any, || format!("pair {pairs}: swaps allowed"))?;
        ensure(are_equivalent_with(x, y, IsoMode::Ordinal, role_fixed) == oracle_fixed, || {
            format!("pair {pairs}: roles fixed")
        })?;
        pairs += 1;
    }
    ensure(positives > 0 && positives < pairs, || "sample did not exercise both outcomes".into())
}

fn preserved(a: &Arc<Game>, b: &Arc<Game>, g: &GameBijection, rng: &mut ChaCha8Rng) -> Check {
    let ctx = || format!("{} -> {}: {}", a.title().unwrap_or(""), b.title().unwrap_or(""), g.describe());
    let image: BTreeSet<PureProfile> = pure_nash_equilibria(a)
        .iter()
        .map(|s| g.act_on_profile(s).unwrap())
        .collect();
    let target: BTreeSet<PureProfile> = pure_nash_equilibria(b).into_iter().collect();
    ensure(image == target, || format!("{}: equilibria not preserved", ctx()))?;
    let n = a.num_players();
    for s in all_profiles(a.strategy_counts()) {
        let t = g.act_on_profile(&PureProfile(s.clone())).unwrap().0;
        for i in 0..n {
            let j = g.player_image(i);
            let opp: Vec<usize> = s.iter().enumerate().filter(|&(x, _)| x != i).map(|(_, &k)| k).collect();
            let opp_t: Vec<usize> = t.iter().enumerate().filter(|&(x, _)| x != j).map(|(_, &k)| k).collect();
            let mapped: BTreeSet<usize> = pure_best_responses(a, i, &opp)
                .unwrap()
                .into_iter()
                .map(|k| g.strategy_image(i, k))
                .collect();
            let there: BTreeSet<usize> = pure_best_responses(b, j, &opp_t).unwrap().into_iter().collect();
            ensure(mapped == there, || format!("{}: best responses not preserved", ctx()))?;
        }
    }
    // Mixed best responses for the strict and cardinal cases.
    if verify_cardinal(g).is_some() {
        let mut profiles = vec![MixedProfile::uniform(a)];
        for _ in 0..3 {
            let rows = a
                .strategy_counts()
                .iter()
                .map(|&d| {
                    let w: Vec<i64> = (0..d).map(|_| rng.random_range(0..=4)).collect();
                    let total: i64 = w.iter().sum::<i64>().max(1);
                    if w.iter().sum::<i64>() == 0 {
                        (0..d).map(|k| if k == 0 { int(1) } else { int(0) }).collect()
                    } else {
                        w.iter().map(|&x| Rational::new(x, total).unwrap()).collect()
                    }
                })
                .collect();
            profiles.push(MixedProfile::new(rows).unwrap());
        }
        for sigma in profiles {
            let moved = g.act_on_mixed(&sigma).unwrap();
            ensure(is_mixed_nash(a, &sigma).unwrap() == is_mixed_nash(b, &moved).unwrap(), || {
                format!("{}: mixed equilibrium not preserved", ctx())
            })?;
            let here = best_response_sets_mixed(a, &sigma).unwrap();
            let there = best_response_sets_mixed(b, &moved).unwrap();
            for i in 0..n {
                let mapped: BTreeSet<usize> = here[i].iter().map(|&k| g.strategy_image(i, k)).collect();
                ensure(mapped == there[g.player_image(i)], || format!("{}: mixed best responses not preserved", ctx()))?;
            }
        }
    }
    Ok(())
}

fn fixture_isomorphisms(rng: &mut ChaCha8Rng) -> Check {
    let corpus: Vec<Arc<Game>> = fixtures::corpus().into_iter().map(|(_, g)| arc(g)).collect();
    let mut checked = 0;
    for a in &corpus {
        for b in &corpus {
            let mut ca = a.strategy_counts().to_vec();
            let mut cb = b.strategy_counts().to_vec();
            ca.sort();
            cb.sort();
            if ca != cb {
                continue;
            }
            for mode in [IsoMode::Strict, IsoMode::Cardinal, IsoMode::Ordinal] {
                for g in search_isomorphisms(a, b, mode, Limit::All) {
                    preserved(a, b, &g, rng)?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked > 0, || "no fixture isomorphisms".into())
}

fn idempotence(rng: &mut ChaCha8Rng) -> Check {
    for round in 0..250 {
        let counts = random_counts(rng);
        let g = random_game(rng, &counts, "s", 5);
        let rank = rank_canonical(&g);
        let aff = affine_canonical(&g);
        let at = || format!("round {round}");
        ensure(rank_canonical(&rank) == rank, || format!("{}: rank form not idempotent", at()))?;
        ensure(affine_canonical(&aff) == aff, || format!("{}: affine form not idempotent", at()))?;
        ensure(rank_canonical(&aff) == rank, || format!("{}: affine form changed the order", at()))?;
        let maps: Vec<(Rational, Rational)> = (0..g.num_players()).map(|_| random_affine(rng)).collect();
        let moved = map_rows(&g, |i, x| &maps[i].0 * x + &maps[i].1);
        ensure(affine_canonical(&moved) == aff, || format!("{}: affine form not invariant", at()))?;
        ensure(rank_canonical(&map_rows(&g, |_, x| cube_plus(x))) == rank, || {
            format!("{}: rank form not invariant", at())
        })?;
    }
    Ok(())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_014);
    groupoid_laws(&mut rng).map_err(|e| format!("groupoid: {e}"))?;
    inclusion_chain(&mut rng).map_err(|e| format!("inclusion chain: {e}"))?;
    census_oracle(&mut rng).map_err(|e| format!("census oracle: {e}"))?;
    fixture_isomorphisms(&mut rng).map_err(|e| format!("preservation: {e}"))?;
    idempotence(&mut rng).map_err(|e| format!("idempotence: {e}"))
}

fn criterion_10() -> Check {
    for (name, args) in common::CASES {
        let mut json = vec!["--format", "json"];
        json.extend_from_slice(args);
        let (first, _) = common::run(&json);
        let (second, _) = common::run(&json);
        ensure(!first.is_empty() && first == second, || format!("{name}: JSON output differs between runs"))?;
        serde_json::from_str::<serde_json::Value>(&first).map_err(|e| format!("{name}: {e}"))?;
    }
    let dir = common::fixtures();
    let read = |name: &str| fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"));
    let game = |stem: &str| -> Result<Arc<Game>, String> {
        format::parse_game(&read(&format!("{stem}.game"))?).map(Arc::new).map_err(|e| e.to_string())
    };
    for (stem, expected) in fixtures::corpus() {
        let text = read(&format!("{stem}.game"))?;
        let parsed = format::parse_game(&text).map_err(|e| format!("{stem}: {e}"))?;
        ensure(parsed == expected && format::serialize_game(&parsed) == text, || format!("{stem}.game does not round-trip"))?;
    }
    for (file, a, b) in [("iso_a_to_iso_b.bij", "iso_a", "iso_b"), ("pd_a_identity.bij", "pd_a", "pd_a")] {
        let text = read(file)?;
        let g = format::parse_bijection(&text, &game(a)?, &game(b)?).map_err(|e| format!("{file}: {e}"))?;
        ensure(format::serialize_bijection(&g) == text, || format!("{file} does not round-trip"))?;
    }
    for (file, stem) in [("pd_tabular.mix", "pd_tabular"), ("mp_uniform.mix", "mp")] {
        let text = read(file)?;
        let g = game(stem)?;
        let sigma = format::parse_mixed(&text, &g).map_err(|e| format!("{file}: {e}"))?;
        ensure(format::serialize_mixed(&g, &sigma) == text, || format!("{file} does not round-trip"))?;
    }
    for file in ["standard_2x2.gen", "diagonal_s3.gen"] {
        let text = read(file)?;
        let set = format::parse_generators(&text).map_err(|e| format!("{file}: {e}"))?;
        ensure(format::serialize_generators(&set) == text, || format!("{file} does not round-trip"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("expected utility of the mixed PD profile is 11/5", criterion_1),
        ("strict isomorphism check and full search", criterion_2),
        ("automorphism groups", criterion_3),
        ("2x2 ordinal census", criterion_4),
        ("symmetry classification labels", criterion_5),
        ("pure Nash equilibria", criterion_6),
        ("VNM and DM symmetry", criterion_7),
        ("pure equilibria in constructed standard games", criterion_8),
        ("property suites", criterion_9),
        ("output determinism and round trips", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {}: {name} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
