//! Reference evaluator for the external objective protocol.
//!
//! `cfo-ref-objective <ID>` serves a registered objective on stdin/stdout.
//! Functions with a configurable dimension take it from each request.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use cfo_objectives::registry::{Dims, FunctionId, ObjectiveOptions, Registered};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [name] = args.as_slice() else {
        eprintln!("usage: cfo-ref-objective <OBJECTIVE_ID>");
        return ExitCode::from(2);
    };
    let id: FunctionId = match name.parse() {
        Ok(id) => id,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };

    let mut built: HashMap<usize, Registered> = HashMap::new();
    let stdin = io::stdin().lock();
    let stdout = BufWriter::new(io::stdout().lock());
    let served = cfo_objectives::external::serve(stdin, stdout, |req| {
        let n = req.x.len();
        let reg = match built.entry(n) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let n_dims = matches!(id.dims(), Dims::Configurable { .. }).then_some(n);
                e.insert(Registered::new(id, &ObjectiveOptions { n_dims, ..Default::default() }).map_err(|e| e.to_string())?)
            }
        };
        reg.value(&req.x).map_err(|e| e.to_string())
    });
    match served {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
