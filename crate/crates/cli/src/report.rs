use std::fs;
use std::path::Path;
use std::sync::Arc;

use gameforge::format::{self, GeneratorSet};
use gameforge::{Game, GameBijection, MixedProfile, PureProfile};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// What a command produced: text for people, a JSON payload for programs,
/// and whether the asked-about predicate holds.
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub holds: bool,
}

impl Outcome {
    pub fn new(text: String, result: Value) -> Self {
        Outcome {
            text,
            result,
            holds: true,
        }
    }

    pub fn holds(mut self, holds: bool) -> Self {
        self.holds = holds;
        self
    }
}

pub enum At {
    Pure(PureProfile),
    Mixed(MixedProfile),
}

/// Files read so far, with their digests, in reading order.
#[derive(Default)]
pub struct Inputs {
    read: Vec<(String, String)>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, String> {
        let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.read.push((path.display().to_string(), hex::encode(Sha256::digest(&bytes))));
        String::from_utf8(bytes).map_err(|_| format!("{}: not valid UTF-8", path.display()))
    }

    pub fn game(&mut self, path: &Path) -> Result<Arc<Game>, String> {
        let text = self.read(path)?;
        format::parse_game(&text)
            .map(Arc::new)
            .map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn bijection(&mut self, path: &Path, a: &Arc<Game>, b: &Arc<Game>) -> Result<GameBijection, String> {
        let text = self.read(path)?;
        format::parse_bijection(&text, a, b).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn generators(&mut self, path: &Path) -> Result<GeneratorSet, String> {
        let text = self.read(path)?;
        format::parse_generators(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn profile(&mut self, game: &Game, names: Option<&str>, mixed: Option<&Path>) -> Result<At, String> {
        match (names, mixed) {
            (Some(names), _) => pure_profile(game, names).map(At::Pure),
            (None, Some(path)) => {
                let text = self.read(path)?;
                format::parse_mixed(&text, game)
                    .map(At::Mixed)
                    .map_err(|e| format!("{}: {e}", path.display()))
            }
            (None, None) => Err("a profile is required".into()),
        }
    }
}

fn pure_profile(game: &Game, names: &str) -> Result<PureProfile, String> {
    let names: Vec<&str> = names.split(',').map(str::trim).collect();
    if names.len() != game.num_players() {
        return Err(format!(
            "profile names {} strategies, the game has {} players",
            names.len(),
            game.num_players()
        ));
    }
    names
        .iter()
        .enumerate()
        .map(|(i, name)| game.strategy_index(i, name).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(PureProfile)
}

pub fn game_json(game: &Game) -> Value {
    json!({
        "title": game.title(),
        "players": game.players(),
        "strategies": game.strategy_lists(),
        "payoffs": game
            .payoff_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// The JSON report: keys sorted, so equal inputs give equal bytes.
pub fn document(command: &str, inputs: &Inputs, result: Value) -> String {
    let inputs: Vec<Value> = inputs
        .read
        .iter()
        .map(|(path, digest)| json!({"path": path, "sha256": digest}))
        .collect();
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
    });
    serde_json::to_string_pretty(&doc).expect("values serialize")
}
