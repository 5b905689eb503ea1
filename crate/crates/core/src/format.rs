//! Text documents for games, bijections, mixed profiles and generator sets.
//!
//! Documents are JSON restricted to objects, arrays and strings. Payoffs
//! and probabilities are rational literals written as strings. Everything
//! is keyed by name; index order is declaration order.
//!
//! Parse errors carry the line and column of the offending value. Writers
//! produce one canonical layout, so `write(parse(text)) == text` for
//! canonical input.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use serde_json::value::RawValue;

use crate::bijection::GameBijection;
use crate::error::{Error, ParseError, Result};
use crate::game::{validate_distribution, Game, MixedProfile};
use crate::perm::Permutation;
use crate::rational::Rational;

/// The source text, for turning value slices into positions.
struct Source<'a> {
    text: &'a str,
}

impl<'a> Source<'a> {
    fn position(&self, raw: &RawValue) -> (usize, usize) {
        let offset = raw.get().as_ptr() as usize - self.text.as_ptr() as usize;
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = offset - before.rfind('\n').map_or(0, |k| k + 1) + 1;
        (line, column)
    }

    fn at(&self, raw: &RawValue, reason: impl ToString) -> Error {
        let (line, column) = self.position(raw);
        Error::Parse(ParseError {
            line,
            column,
            reason: reason.to_string(),
        })
    }

    /// Deserializes one value slice, shifting serde positions to the
    /// whole document.
    fn parse<T: Deserialize<'a>>(&self, raw: &'a RawValue) -> Result<T> {
        serde_json::from_str(raw.get()).map_err(|e| {
            let (line, column) = self.position(raw);
            let e = positioned(&e);
            Error::Parse(if e.line <= 1 {
                ParseError {
                    line,
                    column: column + e.column.saturating_sub(1),
                    reason: e.reason,
                }
            } else {
                ParseError {
                    line: line + e.line - 1,
                    ..e
                }
            })
        })
    }

    fn root(&self) -> Result<&'a RawValue> {
        serde_json::from_str(self.text).map_err(|e| Error::Parse(positioned(&e)))
    }

    fn string(&self, raw: &'a RawValue) -> Result<String> {
        self.parse::<String>(raw)
    }

    fn list(&self, raw: &'a RawValue) -> Result<Vec<&'a RawValue>> {
        self.parse(raw)
    }

    fn entries(&self, raw: &'a RawValue) -> Result<Vec<(String, &'a RawValue)>> {
        let Entries(entries) = self.parse(raw)?;
        let mut seen = HashSet::new();
        for (key, value) in &entries {
            if !seen.insert(key.as_str()) {
                return Err(self.at(value, format!("duplicate key {key:?}")));
            }
        }
        Ok(entries)
    }

    fn rational(&self, raw: &'a RawValue) -> Result<Rational> {
        let literal = self.string(raw)?;
        literal.parse().map_err(|e: Error| self.at(raw, e))
    }
}

fn positioned(e: &serde_json::Error) -> ParseError {
    let text = e.to_string();
    let reason = match text.rfind(" at line ") {
        Some(k) => text[..k].to_string(),
        None => text,
    };
    ParseError {
        line: e.line().max(1),
        column: e.column().max(1),
        reason,
    }
}

/// Object entries in document order, duplicates kept for reporting.
struct Entries<'a>(Vec<(String, &'a RawValue)>);

impl<'de> Deserialize<'de> for Entries<'de> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;
        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = Entries<'de>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, &'de RawValue>()? {
                    out.push(entry);
                }
                Ok(Entries(out))
            }
        }
        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc<'a> {
    #[serde(default)]
    title: Option<String>,
    #[serde(borrow)]
    players: &'a RawValue,
    #[serde(borrow)]
    strategies: &'a RawValue,
    #[serde(borrow)]
    payoffs: &'a RawValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc<'a> {
    #[serde(default)]
    title: Option<String>,
    #[serde(borrow)]
    players: &'a RawValue,
    #[serde(borrow)]
    strategies: &'a RawValue,
    #[serde(borrow)]
    generators: &'a RawValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BijectionDoc<'a> {
    #[serde(borrow)]
    players: &'a RawValue,
    #[serde(borrow)]
    strategies: &'a RawValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixedDoc<'a> {
    #[serde(borrow)]
    profile: &'a RawValue,
}

/// Player and strategy declarations with the slices they came from.
struct Shape<'a> {
    players_raw: &'a RawValue,
    player_raws: Vec<&'a RawValue>,
    players: Vec<String>,
    strategies_raw: &'a RawValue,
    row_raws: Vec<&'a RawValue>,
    name_raws: Vec<Vec<&'a RawValue>>,
    strategies: Vec<Vec<String>>,
}

impl<'a> Shape<'a> {
    fn parse(src: &Source<'a>, players_raw: &'a RawValue, strategies_raw: &'a RawValue) -> Result<Self> {
        let player_raws = src.list(players_raw)?;
        let players = player_raws.iter().map(|r| src.string(r)).collect::<Result<_>>()?;
        let row_raws = src.list(strategies_raw)?;
        let name_raws: Vec<Vec<&RawValue>> = row_raws.iter().map(|r| src.list(r)).collect::<Result<_>>()?;
        let strategies = name_raws
            .iter()
            .map(|row| row.iter().map(|r| src.string(r)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(Shape {
            players_raw,
            player_raws,
            players,
            strategies_raw,
            row_raws,
            name_raws,
            strategies,
        })
    }

    fn player(&self, name: &str) -> usize {
        self.players.iter().position(|p| p == name).unwrap_or(0)
    }

    fn second(names: &[String], name: &str) -> Option<usize> {
        names.iter().enumerate().filter(|(_, n)| *n == name).nth(1).map(|(k, _)| k)
    }

    /// Positions a game construction error at the value responsible.
    fn locate(&self, src: &Source<'a>, e: Error, payoffs: Option<(&'a RawValue, &[&'a RawValue])>) -> Error {
        let raw = match &e {
            Error::TooFewPlayers(_) => self.players_raw,
            Error::DuplicatePlayer(name) => {
                Shape::second(&self.players, name).map_or(self.players_raw, |k| self.player_raws[k])
            }
            Error::StrategyListCount { .. } => self.strategies_raw,
            Error::EmptyStrategySet { player } => self.row_raws[self.player(player)],
            Error::DuplicateStrategy { player, name } => {
                let i = self.player(player);
                Shape::second(&self.strategies[i], name).map_or(self.row_raws[i], |k| self.name_raws[i][k])
            }
            Error::PayoffRowCount { .. } => payoffs.map_or(self.players_raw, |(all, _)| all),
            Error::PayoffLength { player, .. } => {
                payoffs.map_or(self.players_raw, |(_, rows)| rows[self.player(player)])
            }
            _ => self.players_raw,
        };
        src.at(raw, e)
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    let src = Source { text };
    let doc: GameDoc = src.parse(src.root()?)?;
    let shape = Shape::parse(&src, doc.players, doc.strategies)?;
    let row_raws = src.list(doc.payoffs)?;
    let mut payoffs = Vec::with_capacity(row_raws.len());
    for row in &row_raws {
        let cells = src.list(row)?;
        payoffs.push(cells.iter().map(|c| src.rational(c)).collect::<Result<Vec<_>>>()?);
    }
    let game = Game::new(shape.players.clone(), shape.strategies.clone(), payoffs)
        .map_err(|e| shape.locate(&src, e, Some((doc.payoffs, &row_raws))))?;
    Ok(match doc.title {
        Some(t) => game.with_title(t),
        None => game,
    })
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn inline_list<'s>(items: impl IntoIterator<Item = &'s str>) -> String {
    let items: Vec<String> = items.into_iter().map(quote).collect();
    format!("[{}]", items.join(", "))
}

fn block<T>(out: &mut String, indent: &str, items: &[T], line: impl Fn(&T) -> String) {
    out.push_str("[\n");
    for (k, item) in items.iter().enumerate() {
        let comma = if k + 1 < items.len() { "," } else { "" };
        let _ = writeln!(out, "{indent}  {}{comma}", line(item));
    }
    let _ = write!(out, "{indent}]");
}

fn write_shape(out: &mut String, game: &Game) {
    if let Some(t) = game.title() {
        let _ = writeln!(out, "  \"title\": {},", quote(t));
    }
    let _ = writeln!(out, "  \"players\": {},", inline_list(game.players().iter().map(String::as_str)));
    out.push_str("  \"strategies\": ");
    block(out, "  ", game.strategy_lists(), |l| inline_list(l.iter().map(String::as_str)));
}

/// Canonical game document, newline-terminated.
pub fn serialize_game(game: &Game) -> String {
    let mut out = String::from("{\n");
    write_shape(&mut out, game);
    out.push_str(",\n  \"payoffs\": ");
    let rows: Vec<Vec<String>> = game
        .payoff_rows()
        .iter()
        .map(|r| r.iter().map(Rational::to_string).collect())
        .collect();
    block(&mut out, "  ", &rows, |r| inline_list(r.iter().map(String::as_str)));
    out.push_str("\n}\n");
    out
}

fn bijection_from(src: &Source<'_>, raw: &RawValue, source: &Arc<Game>, target: &Arc<Game>) -> Result<GameBijection> {
    let doc: BijectionDoc = src.parse(raw)?;
    let n = source.num_players();
    let mut images = vec![None; n];
    let mut hit = vec![false; target.num_players()];
    for (from, value) in src.entries(doc.players)? {
        let i = source.player_index(&from).map_err(|e| src.at(value, e))?;
        let to = src.string(value)?;
        let j = target.player_index(&to).map_err(|e| src.at(value, e))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(src.at(value, format!("player {to:?} is the image of two players")));
        }
        images[i] = Some(j);
    }
    let images: Vec<usize> = images
        .into_iter()
        .enumerate()
        .map(|(i, j)| j.ok_or_else(|| src.at(doc.players, format!("player {:?} is not mapped", source.players()[i]))))
        .collect::<Result<_>>()?;
    let perm = Permutation::new(images).map_err(|e| src.at(doc.players, e))?;

    let mut maps: Vec<Option<Vec<usize>>> = vec![None; n];
    for (from, value) in src.entries(doc.strategies)? {
        let i = source.player_index(&from).map_err(|e| src.at(value, e))?;
        let j = perm.apply(i);
        let (d, e) = (source.strategy_counts()[i], target.strategy_counts()[j]);
        if d != e {
            return Err(src.at(
                value,
                format!("player {from:?} has {d} strategies but its image has {e}"),
            ));
        }
        let mut map = vec![usize::MAX; d];
        let mut hit = vec![false; e];
        for (name, image) in src.entries(value)? {
            let k = source.strategy_index(i, &name).map_err(|e| src.at(image, e))?;
            let to = src.string(image)?;
            let t = target.strategy_index(j, &to).map_err(|e| src.at(image, e))?;
            if std::mem::replace(&mut hit[t], true) {
                return Err(src.at(image, format!("strategy {to:?} is the image of two strategies")));
            }
            map[k] = t;
        }
        if let Some(k) = map.iter().position(|&t| t == usize::MAX) {
            return Err(src.at(value, format!("strategy {:?} is not mapped", source.strategies(i)[k])));
        }
        maps[i] = Some(map);
    }
    let maps: Vec<Vec<usize>> = maps
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| src.at(doc.strategies, format!("strategies of player {:?} are not mapped", source.players()[i])))
        })
        .collect::<Result<_>>()?;
    GameBijection::new(source.clone(), target.clone(), perm, maps).map_err(|e| src.at(raw, e))
}

/// Reads a bijection from `source` to `target` given by names.
pub fn parse_bijection(text: &str, source: &Arc<Game>, target: &Arc<Game>) -> Result<GameBijection> {
    let src = Source { text };
    bijection_from(&src, src.root()?, source, target)
}

fn write_bijection(out: &mut String, indent: &str, g: &GameBijection) {
    let (a, b) = (g.source(), g.target());
    let pairs = |items: Vec<(&str, &str)>| {
        let parts: Vec<String> = items.iter().map(|(k, v)| format!("{}: {}", quote(k), quote(v))).collect();
        format!("{{{}}}", parts.join(", "))
    };
    let players = pairs(
        (0..a.num_players())
            .map(|i| (a.players()[i].as_str(), b.players()[g.player_image(i)].as_str()))
            .collect(),
    );
    let _ = writeln!(out, "{{\n{indent}  \"players\": {players},");
    let _ = writeln!(out, "{indent}  \"strategies\": {{");
    let n = a.num_players();
    for i in 0..n {
        let j = g.player_image(i);
        let map = pairs(
            (0..a.strategy_counts()[i])
                .map(|k| (a.strategies(i)[k].as_str(), b.strategies(j)[g.strategy_image(i, k)].as_str()))
                .collect(),
        );
        let comma = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "{indent}    {}: {map}{comma}", quote(&a.players()[i]));
    }
    let _ = write!(out, "{indent}  }}\n{indent}}}");
}

pub fn serialize_bijection(g: &GameBijection) -> String {
    let mut out = String::new();
    write_bijection(&mut out, "", g);
    out.push('\n');
    out
}

/// Reads a mixed profile of `game`. Every player and strategy must be
/// listed; probabilities sum to one.
pub fn parse_mixed(text: &str, game: &Game) -> Result<MixedProfile> {
    let src = Source { text };
    let doc: MixedDoc = src.parse(src.root()?)?;
    let n = game.num_players();
    let mut rows: Vec<Option<Vec<Rational>>> = vec![None; n];
    for (name, value) in src.entries(doc.profile)? {
        let i = game.player_index(&name).map_err(|e| src.at(value, e))?;
        let mut row = vec![None; game.strategy_counts()[i]];
        for (strategy, p) in src.entries(value)? {
            let k = game.strategy_index(i, &strategy).map_err(|e| src.at(p, e))?;
            row[k] = Some(src.rational(p)?);
        }
        let row: Vec<Rational> = row
            .into_iter()
            .enumerate()
            .map(|(k, p)| p.ok_or_else(|| src.at(value, format!("strategy {:?} has no probability", game.strategies(i)[k]))))
            .collect::<Result<_>>()?;
        validate_distribution(i, &row).map_err(|e| src.at(value, e))?;
        rows[i] = Some(row);
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| src.at(doc.profile, format!("player {:?} is missing", game.players()[i]))))
        .collect::<Result<_>>()?;
    MixedProfile::new(rows).map_err(|e| src.at(doc.profile, e))
}

pub fn serialize_mixed(game: &Game, sigma: &MixedProfile) -> String {
    let mut out = String::from("{\n  \"profile\": {\n");
    let n = game.num_players();
    for i in 0..n {
        let parts: Vec<String> = sigma
            .row(i)
            .iter()
            .zip(game.strategies(i))
            .map(|(p, s)| format!("{}: {}", quote(s), quote(&p.to_string())))
            .collect();
        let comma = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    {}: {{{}}}{comma}", quote(&game.players()[i]), parts.join(", "));
    }
    out.push_str("  }\n}\n");
    out
}

/// A payoff-free shape and a list of its self-bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub shape: Arc<Game>,
    pub generators: Vec<GameBijection>,
}

pub fn parse_generators(text: &str) -> Result<GeneratorSet> {
    let src = Source { text };
    let doc: GeneratorDoc = src.parse(src.root()?)?;
    let shape = Shape::parse(&src, doc.players, doc.strategies)?;
    let game = Game::zeros(shape.players.clone(), shape.strategies.clone()).map_err(|e| shape.locate(&src, e, None))?;
    let game = Arc::new(match doc.title {
        Some(t) => game.with_title(t),
        None => game,
    });
    let generators = src
        .list(doc.generators)?
        .into_iter()
        .map(|raw| bijection_from(&src, raw, &game, &game))
        .collect::<Result<_>>()?;
    Ok(GeneratorSet { shape: game, generators })
}

pub fn serialize_generators(set: &GeneratorSet) -> String {
    let mut out = String::from("{\n");
    write_shape(&mut out, &set.shape);
    out.push_str(",\n  \"generators\": [");
    for (k, g) in set.generators.iter().enumerate() {
        out.push_str(if k == 0 { "\n    " } else { ",\n    " });
        write_bijection(&mut out, "    ", g);
    }
    out.push_str(if set.generators.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn parse_err(text: &str) -> ParseError {
        match parse_game(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    const PD: &str = r#"{
  "title": "Prisoner's Dilemma (table representation)",
  "players": ["1", "2"],
  "strategies": [
    ["d", "c"],
    ["d", "c"]
  ],
  "payoffs": [
    ["2", "1", "4", "3"],
    ["2", "4", "1", "3"]
  ]
}
"#;

    #[test]
    fn game_round_trip() {
        let game = parse_game(PD).unwrap();
        assert_eq!(game, fixtures::prisoners_dilemma_tabular());
        assert_eq!(game.utility(1, &[0, 1]).unwrap(), &Rational::from_integer(4));
        assert_eq!(serialize_game(&game), PD);
        for (_, g) in fixtures::corpus() {
            assert_eq!(parse_game(&serialize_game(&g)).unwrap(), g);
        }
    }

    #[test]
    fn decimals_are_exact_and_written_as_fractions() {
        let text = PD.replace("\"2\", \"1\", \"4\", \"3\"", "\"2.2\", \"1\", \"4\", \"3\"");
        let game = parse_game(&text).unwrap();
        assert_eq!(game.payoff_row(0)[0], Rational::new(11, 5).unwrap());
        assert!(serialize_game(&game).contains("\"11/5\""));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_err(&PD.replace("\"4\", \"3\"", "\"4\", \"x3\""));
        assert_eq!((e.line, e.column), (9, 21));
        assert!(e.reason.contains("x3"), "{}", e.reason);

        let e = parse_err(&PD.replace("[\"2\", \"4\", \"1\", \"3\"]", "[\"2\", \"4\", \"1\"]"));
        assert_eq!((e.line, e.column), (10, 5));

        let e = parse_err(&PD.replace("[\"1\", \"2\"]", "[\"1\", \"1\"]"));
        assert_eq!((e.line, e.column), (3, 20));
        assert!(e.reason.contains("duplicate player"));

        let e = parse_err(&PD.replace("\"players\"", "\"people\""));
        assert_eq!(e.line, 3);
        assert!(e.reason.contains("people"));

        let e = parse_err(&PD.replace("\"3\"]\n  ]", "3]\n  ]"));
        assert_eq!(e.line, 10);

        let e = parse_err(r#"{"players": ["1"], "strategies": [["a"]], "payoffs": [["0"]]}"#);
        assert!(e.reason.contains("at least two players"));

        let e = parse_err("{\"players\": [");
        assert_eq!(e.line, 1);
    }

    #[test]
    fn bijection_documents() {
        let a = Arc::new(fixtures::isomorphism_source());
        let b = Arc::new(fixtures::isomorphism_target());
        let text = r#"{
  "players": {"1": "2", "2": "1"},
  "strategies": {
    "1": {"a_1": "d_2", "a_2": "d_1"},
    "2": {"b_1": "c_1", "b_2": "c_2"}
  }
}
"#;
        let g = parse_bijection(text, &a, &b).unwrap();
        assert!(crate::isomorphism::verify_strict(&g));
        assert_eq!(serialize_bijection(&g), text);

        let id = GameBijection::identity(&a);
        assert_eq!(parse_bijection(&serialize_bijection(&id), &a, &a).unwrap(), id);

        let bad = text.replace("\"a_2\": \"d_1\"", "\"a_2\": \"d_2\"");
        assert!(matches!(parse_bijection(&bad, &a, &b), Err(Error::Parse(e)) if e.reason.contains("two strategies") && e.line == 4));
        let unknown = text.replace("\"b_2\": \"c_2\"", "\"b_3\": \"c_2\"");
        assert!(matches!(parse_bijection(&unknown, &a, &b), Err(Error::Parse(e)) if e.reason.contains("b_3")));
    }

    #[test]
    fn mixed_documents() {
        let game = fixtures::prisoners_dilemma_tabular();
        let text = "{\n  \"profile\": {\n    \"1\": {\"d\": \"1/5\", \"c\": \"4/5\"},\n    \"2\": {\"d\": \"1/2\", \"c\": \"1/2\"}\n  }\n}\n";
        let sigma = parse_mixed(text, &game).unwrap();
        assert_eq!(game.expected_utility(1, &sigma).unwrap(), Rational::new(11, 5).unwrap());
        assert_eq!(serialize_mixed(&game, &sigma), text);
        let bad = text.replace("4/5", "3/5");
        assert!(matches!(parse_mixed(&bad, &game), Err(Error::Parse(e)) if e.line == 3));
    }

    #[test]
    fn generator_documents() {
        let shape = Arc::new(
            Game::zeros(
                vec!["1".into(), "2".into()],
                vec![vec!["a".into(), "b".into()], vec!["c".into(), "d".into()]],
            )
            .unwrap(),
        );
        let swap = GameBijection::new(shape.clone(), shape.clone(), Permutation::transposition(2, 0, 1), vec![vec![0, 1], vec![0, 1]]).unwrap();
        let set = GeneratorSet {
            shape: shape.clone(),
            generators: vec![swap, GameBijection::identity(&shape)],
        };
        let text = serialize_generators(&set);
        assert_eq!(parse_generators(&text).unwrap(), set);
        let empty = GeneratorSet { shape, generators: vec![] };
        assert_eq!(parse_generators(&serialize_generators(&empty)).unwrap(), empty);
    }
}
