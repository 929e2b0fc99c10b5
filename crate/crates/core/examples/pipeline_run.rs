//! Drive the batch pipeline from code with an inline configuration.

use petit_lattice::pipeline::{run, Command, RunOptions};

fn main() -> petit_lattice::Result<()> {
    let config = r#"{
        "order": "gaussian",
        "maps": { "sigma": "conj" },
        "f": [[0, -1], [0, 0], [1, 0]],
        "prime": 5,
        "codes": { "ideal_generator": [[3, 4]] }
    }"#;
    for cmd in [Command::Inspect, Command::Codes, Command::Lattice] {
        let out = run(cmd, config, RunOptions::default())?;
        let names: Vec<&str> = out.files.iter().map(|(n, _)| n.as_str()).collect();
        println!("{}: {} -> {names:?}", cmd.name(), out.summary);
    }
    Ok(())
}
