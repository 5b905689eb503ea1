use std::fmt::Write as _;
use std::sync::Arc;

use gameforge::census::ordinal_census_2x2;
use gameforge::construct::{construct_from_generators, Values};
use gameforge::equilibrium::{
    best_response_sets_mixed, dominance_pairs, is_mixed_nash, is_pure_nash, pure_best_responses,
    pure_nash_equilibria,
};
use gameforge::format::{serialize_game, GeneratorSet};
use gameforge::isomorphism::{search_isomorphisms, verify, verify_cardinal, AffineWitness, Limit};
use gameforge::symmetry::{self, SearchLimits, SymmetryConfig};
use gameforge::{Game, GameBijection, IsoMode, Permutation, PureProfile, Rational};
use serde_json::{json, Value};

use crate::report::{game_json, At, Outcome};

fn players_of(game: &Game, player: Option<&str>) -> Result<Vec<usize>, String> {
    match player {
        Some(name) => game.player_index(name).map(|i| vec![i]).map_err(|e| e.to_string()),
        None => Ok((0..game.num_players()).collect()),
    }
}

fn profile_text(game: &Game, s: &[usize]) -> String {
    format!("({})", game.profile_names(s).join(", "))
}

fn profile_value(game: &Game, s: &[usize]) -> Value {
    json!(game.profile_names(s))
}

fn names(game: &Game, player: usize, ks: impl IntoIterator<Item = usize>) -> Vec<String> {
    ks.into_iter().map(|k| game.strategies(player)[k].clone()).collect()
}

fn perms_text(perms: &[Permutation]) -> String {
    perms.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn info(game: &Game) -> Result<Outcome, String> {
    let mut text = String::new();
    if let Some(t) = game.title() {
        let _ = writeln!(text, "title: {t}");
    }
    let _ = writeln!(text, "players: {}", game.num_players());
    for (p, list) in game.players().iter().zip(game.strategy_lists()) {
        let _ = writeln!(text, "  {p}: {}", list.join(", "));
    }
    let _ = writeln!(text, "profiles: {}", game.num_profiles());
    let players: Vec<Value> = game
        .players()
        .iter()
        .zip(game.strategy_lists())
        .map(|(p, list)| json!({"name": p, "strategies": list}))
        .collect();
    Ok(Outcome::new(
        text,
        json!({"title": game.title(), "players": players, "profiles": game.num_profiles()}),
    ))
}

pub fn payoff(game: &Game, at: &At, player: Option<&str>) -> Result<Outcome, String> {
    let players = players_of(game, player)?;
    let (label, at_value) = match at {
        At::Pure(s) => (profile_text(game, s), json!({"profile": profile_value(game, s)})),
        At::Mixed(_) => ("(sigma)".to_string(), json!({"profile": "mixed"})),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in players {
        let u = match at {
            At::Pure(s) => game.utility(i, s).cloned(),
            At::Mixed(sigma) => game.expected_utility(i, sigma),
        }
        .map_err(|e| e.to_string())?;
        let name = &game.players()[i];
        let _ = writeln!(text, "u_{name}{label} = {u}");
        rows.push(json!({"player": name, "payoff": u.to_string()}));
    }
    let mut result = at_value;
    result["payoffs"] = json!(rows);
    Ok(Outcome::new(text, result))
}

pub fn pure_nash(game: &Game) -> Result<Outcome, String> {
    let eq = pure_nash_equilibria(game);
    let mut text = String::new();
    if eq.is_empty() {
        text.push_str("no pure Nash equilibria\n");
    }
    for s in &eq {
        let _ = writeln!(text, "{}", profile_text(game, s));
    }
    let list: Vec<Value> = eq.iter().map(|s| profile_value(game, s)).collect();
    Ok(Outcome::new(text, json!({"count": eq.len(), "equilibria": list})))
}

fn opponents(s: &PureProfile, i: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &k)| k).collect()
}

pub fn best_response(game: &Game, at: &At, player: Option<&str>) -> Result<Outcome, String> {
    let players = players_of(game, player)?;
    let sets: Vec<Vec<usize>> = match at {
        At::Pure(s) => players
            .iter()
            .map(|&i| pure_best_responses(game, i, &opponents(s, i)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?,
        At::Mixed(sigma) => {
            let all = best_response_sets_mixed(game, sigma).map_err(|e| e.to_string())?;
            players.iter().map(|&i| all[i].iter().copied().collect()).collect()
        }
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for (&i, set) in players.iter().zip(&sets) {
        let strategies = names(game, i, set.iter().copied());
        let _ = writeln!(text, "{}: {}", game.players()[i], strategies.join(", "));
        rows.push(json!({"player": game.players()[i], "strategies": strategies}));
    }
    Ok(Outcome::new(text, json!({"best_responses": rows})))
}

pub fn dominance(game: &Game, player: Option<&str>) -> Result<Outcome, String> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in players_of(game, player)? {
        for (better, worse) in dominance_pairs(game, i).map_err(|e| e.to_string())? {
            let (b, w) = (&game.strategies(i)[better], &game.strategies(i)[worse]);
            let _ = writeln!(text, "{}: {b} strictly dominates {w}", game.players()[i]);
            rows.push(json!({"player": game.players()[i], "better": b, "worse": w}));
        }
    }
    if rows.is_empty() {
        text.push_str("no strict dominance between pure strategies\n");
    }
    Ok(Outcome::new(text, json!({"dominance": rows})))
}

pub fn verify_ne(game: &Game, at: &At) -> Result<Outcome, String> {
    let (holds, label) = match at {
        At::Pure(s) => (is_pure_nash(game, s), profile_text(game, s)),
        At::Mixed(sigma) => (is_mixed_nash(game, sigma), "the mixed profile".to_string()),
    };
    let holds = holds.map_err(|e| e.to_string())?;
    let verdict = if holds { "is" } else { "is not" };
    Ok(Outcome::new(format!("{label} {verdict} a Nash equilibrium\n"), json!({"nash": holds})).holds(holds))
}

fn witness_value(g: &GameBijection, w: &AffineWitness) -> Value {
    let maps: Vec<Value> = w
        .maps
        .iter()
        .enumerate()
        .map(|(i, (scale, shift))| {
            json!({"player": g.source().players()[i], "scale": scale.to_string(), "shift": shift.to_string()})
        })
        .collect();
    json!(maps)
}

fn witness_text(g: &GameBijection, w: &AffineWitness) -> String {
    let parts: Vec<String> = w
        .maps
        .iter()
        .enumerate()
        .map(|(i, (scale, shift))| format!("{}: x -> {scale}*x + {shift}", g.source().players()[i]))
        .collect();
    parts.join("; ")
}

fn bijection_value(g: &GameBijection) -> Value {
    let (a, b) = (g.source(), g.target());
    let players: serde_json::Map<String, Value> = (0..a.num_players())
        .map(|i| (a.players()[i].clone(), json!(b.players()[g.player_image(i)])))
        .collect();
    let strategies: serde_json::Map<String, Value> = (0..a.num_players())
        .map(|i| {
            let j = g.player_image(i);
            let map: serde_json::Map<String, Value> = (0..a.strategy_counts()[i])
                .map(|k| (a.strategies(i)[k].clone(), json!(b.strategies(j)[g.strategy_image(i, k)])))
                .collect();
            (a.players()[i].clone(), Value::Object(map))
        })
        .collect();
    json!({"description": g.describe(), "players": players, "strategies": strategies})
}

fn isomorphism_entry(g: &GameBijection, mode: IsoMode, text: &mut String) -> Value {
    let mut value = bijection_value(g);
    let _ = writeln!(text, "{}", g.describe());
    if mode == IsoMode::Cardinal {
        if let Some(w) = verify_cardinal(g) {
            let _ = writeln!(text, "  {}", witness_text(g, &w));
            value["witness"] = witness_value(g, &w);
        }
    }
    value
}

pub fn iso_check(g: &GameBijection, mode: IsoMode) -> Result<Outcome, String> {
    let holds = verify(g, mode);
    let mut text = String::new();
    let mut result = json!({"mode": mode.as_str(), "isomorphism": holds});
    if holds {
        result["bijection"] = isomorphism_entry(g, mode, &mut text);
    } else {
        let _ = writeln!(text, "{}", g.describe());
    }
    let _ = writeln!(text, "{mode} isomorphism: {}", if holds { "yes" } else { "no" });
    Ok(Outcome::new(text, result).holds(holds))
}

pub fn iso_search(a: &Arc<Game>, b: &Arc<Game>, mode: IsoMode, all: bool) -> Result<Outcome, String> {
    let limit = if all { Limit::All } else { Limit::AtMost(1) };
    let found = search_isomorphisms(a, b, mode, limit);
    let mut text = String::new();
    let list: Vec<Value> = found.iter().map(|g| isomorphism_entry(g, mode, &mut text)).collect();
    if found.is_empty() {
        let _ = writeln!(text, "no {mode} isomorphism");
    } else if all {
        let _ = writeln!(text, "{} {mode} isomorphisms", found.len());
    }
    Ok(Outcome::new(
        text,
        json!({"mode": mode.as_str(), "all": all, "count": found.len(), "isomorphisms": list}),
    )
    .holds(!found.is_empty()))
}

pub fn aut(game: &Arc<Game>) -> Result<Outcome, String> {
    let group = symmetry::automorphism_group(game);
    let projection = symmetry::player_projection(&group);
    let transitive = symmetry::is_player_transitive(&group);
    let n_transitive = symmetry::is_player_n_transitive(&group);
    let trivial = symmetry::is_strategy_trivial(&group);
    let mut text = String::new();
    for g in group.elements() {
        let _ = writeln!(text, "{}", g.describe());
    }
    let _ = writeln!(text, "order: {}", group.len());
    let _ = writeln!(text, "player projection: {}", perms_text(&projection));
    let _ = writeln!(text, "player transitive: {transitive}");
    let _ = writeln!(text, "player n-transitive: {n_transitive}");
    let _ = writeln!(text, "strategy trivial: {trivial}");
    let elements: Vec<String> = group.elements().iter().map(GameBijection::describe).collect();
    let projection: Vec<String> = projection.iter().map(|p| p.to_string()).collect();
    Ok(Outcome::new(
        text,
        json!({
            "order": group.len(),
            "elements": elements,
            "player_projection": projection,
            "player_transitive": transitive,
            "player_n_transitive": n_transitive,
            "strategy_trivial": trivial,
        }),
    ))
}

fn config() -> Result<SymmetryConfig, String> {
    Ok(SymmetryConfig {
        limits: SearchLimits::from_env().map_err(|e| e.to_string())?,
        ..Default::default()
    })
}

pub fn classify(game: &Arc<Game>) -> Result<Outcome, String> {
    let report = symmetry::classify(game, &config()?).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let _ = writeln!(text, "class: {}", report.class);
    let flags = [
        ("symmetric", report.is_symmetric),
        ("fully symmetric", report.is_fully_symmetric),
        ("standard symmetric", report.is_standard_symmetric),
        ("VNM symmetric", report.is_vnm),
        ("DM symmetric", report.is_dm),
        ("n-transitive strategy-trivial group", report.has_n_transitive_strategy_trivial_group),
    ];
    for (name, value) in flags {
        let _ = writeln!(text, "{name}: {value}");
    }
    let _ = writeln!(text, "automorphisms: {}", report.automorphism_count);
    let _ = writeln!(text, "player projection: {}", perms_text(&report.player_projection));
    let standard = report.standard_witness.as_ref().map(|w| {
        let _ = writeln!(text, "standard matching: {}", w.matching.describe(game));
        let _ = writeln!(text, "matching player group: {}", perms_text(&w.players));
        json!({
            "matching": w.matching.describe(game),
            "players": w.players.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    });
    let vnm = report.vnm_matching.as_ref().map(|m| m.describe(game));
    Ok(Outcome::new(
        text,
        json!({
            "class": report.class.label(),
            "is_symmetric": report.is_symmetric,
            "is_fully_symmetric": report.is_fully_symmetric,
            "is_standard_symmetric": report.is_standard_symmetric,
            "is_vnm": report.is_vnm,
            "is_dm": report.is_dm,
            "has_n_transitive_strategy_trivial_group": report.has_n_transitive_strategy_trivial_group,
            "automorphism_count": report.automorphism_count,
            "player_projection": report.player_projection.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "standard_witness": standard,
            "vnm_matching": vnm,
        }),
    ))
}

pub fn construct(set: GeneratorSet, seed: Option<u64>, values: Option<&str>) -> Result<Outcome, String> {
    let values = match (seed, values) {
        (Some(seed), _) => Values::Seeded(seed),
        (None, Some(list)) => Values::Supplied(
            list.split(',')
                .map(|x| x.trim().parse::<Rational>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?,
        ),
        (None, None) => return Err("either --seed or --values is required".into()),
    };
    let c = construct_from_generators(&set.shape, &set.generators, values).map_err(|e| e.to_string())?;
    let text = serialize_game(&c.game);
    Ok(Outcome::new(
        text,
        json!({
            "orbits": c.orbits.len(),
            "group_order": c.group_order,
            "player_transitive": c.player_transitive,
            "values": c.values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "game": game_json(&c.game),
        }),
    ))
}

pub fn census() -> Outcome {
    let census = ordinal_census_2x2();
    let text = format!(
        "games: {}\nclasses with player roles fixed: {}\nclasses with player swaps allowed: {}\n",
        census.games_enumerated, census.class_count, census.class_count_with_player_swaps
    );
    let representatives: Vec<Value> = census
        .representatives
        .iter()
        .zip(&census.class_sizes)
        .map(|(g, size)| {
            let rows: Vec<Vec<String>> = g
                .payoff_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            json!({"payoffs": rows, "size": size})
        })
        .collect();
    Outcome::new(
        text,
        json!({
            "games_enumerated": census.games_enumerated,
            "class_count": census.class_count,
            "class_count_with_player_swaps": census.class_count_with_player_swaps,
            "representatives": representatives,
        }),
    )
}
