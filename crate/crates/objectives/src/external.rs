//! Fitness from a child process over a line protocol on stdin/stdout.
//!
//! ```text
//! child  -> CFO-OBJ 1
//! parent -> EVAL <run_id> <step> <probe> <n_dims> <x1> ... <xN>
//! child  -> FITNESS <value>  |  ERROR <message>
//! ```
//!
//! Coordinates are written with 17 significant digits so they round-trip
//! exactly. A run is only reproducible if the child is deterministic.

use std::io::{BufRead, BufReader, Read, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::Duration;

use cfo_core::{BoxError, EvalContext, Objective};

use crate::error::{ExternalError, ObjectiveError};

pub const HANDSHAKE: &str = "CFO-OBJ 1";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

/// How to launch the evaluator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExternalCommand {
    pub program: String,
    pub args: Vec<String>,
    /// Limit on each reply, including the handshake.
    pub timeout: Duration,
    pub run_id: u64,
}

impl ExternalCommand {
    pub fn new(program: impl Into<String>) -> Self {
        Self { program: program.into(), args: Vec::new(), timeout: DEFAULT_TIMEOUT, run_id: 0 }
    }

    pub fn arg(mut self, arg: impl Into<String>) -> Self {
        self.args.push(arg.into());
        self
    }

    pub fn timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn run_id(mut self, run_id: u64) -> Self {
        self.run_id = run_id;
        self
    }

    fn display(&self) -> String {
        std::iter::once(self.program.as_str()).chain(self.args.iter().map(String::as_str)).collect::<Vec<_>>().join(" ")
    }
}

/// A running evaluator. The child is killed on drop if it has not exited
/// after its stdin closes.
#[derive(Debug)]
pub struct ExternalObjective {
    command: ExternalCommand,
    child: Child,
    stdin: Option<ChildStdin>,
    lines: Receiver<std::io::Result<String>>,
    stderr: Arc<Mutex<String>>,
}

impl ExternalObjective {
    /// Starts the child and checks its handshake.
    pub fn spawn(command: ExternalCommand) -> Result<Self, ExternalError> {
        let mut child = Command::new(&command.program)
            .args(&command.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|source| ExternalError::Spawn { command: command.display(), source })?;

        let stdout = child.stdout.take().expect("stdout is piped");
        let (tx, lines) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });

        let stderr = Arc::new(Mutex::new(String::new()));
        let mut err_pipe = child.stderr.take().expect("stderr is piped");
        let sink = Arc::clone(&stderr);
        thread::spawn(move || {
            let mut buf = [0u8; 4096];
            while let Ok(n) = err_pipe.read(&mut buf) {
                if n == 0 {
                    break;
                }
                sink.lock().unwrap().push_str(&String::from_utf8_lossy(&buf[..n]));
            }
        });

        let stdin = child.stdin.take();
        let mut obj = Self { command, child, stdin, lines, stderr };
        let line = obj.next_line()?;
        if line.trim_end() != HANDSHAKE {
            return Err(ExternalError::Handshake { line, stderr: obj.stderr_text() });
        }
        Ok(obj)
    }

    pub fn command(&self) -> &ExternalCommand {
        &self.command
    }

    /// One evaluation round trip.
    pub fn request(&mut self, x: &[f64], ctx: EvalContext) -> Result<f64, ExternalError> {
        let mut msg = format!("EVAL {} {} {} {}", self.command.run_id, ctx.step, ctx.probe, x.len());
        for v in x {
            msg.push_str(&format!(" {v:.16e}"));
        }
        msg.push('\n');
        let stdin = self.stdin.as_mut().expect("stdin open while running");
        if let Err(e) = stdin.write_all(msg.as_bytes()).and_then(|_| stdin.flush()) {
            return Err(self.exit_error().unwrap_or(ExternalError::Io(e)));
        }
        let line = self.next_line()?;
        parse_reply(&line).ok_or_else(|| ExternalError::Malformed { line: line.clone(), stderr: self.stderr_text() })?
    }

    fn next_line(&mut self) -> Result<String, ExternalError> {
        match self.lines.recv_timeout(self.command.timeout) {
            Ok(Ok(line)) => Ok(line),
            Ok(Err(e)) => Err(ExternalError::Io(e)),
            Err(RecvTimeoutError::Timeout) => {
                let _ = self.child.kill();
                let _ = self.child.wait();
                Err(ExternalError::Timeout { timeout: self.command.timeout, stderr: self.stderr_text() })
            }
            Err(RecvTimeoutError::Disconnected) => Err(self
                .exit_error()
                .unwrap_or_else(|| ExternalError::Exited { status: "closed stdout".into(), stderr: self.stderr_text() })),
        }
    }

    fn exit_error(&mut self) -> Option<ExternalError> {
        let status = self.child.wait().ok()?;
        // Give the stderr reader a moment to drain.
        thread::sleep(Duration::from_millis(20));
        Some(ExternalError::Exited { status: status.to_string(), stderr: self.stderr_text() })
    }

    fn stderr_text(&self) -> String {
        self.stderr.lock().unwrap().trim_end().to_string()
    }
}

fn parse_reply(line: &str) -> Option<Result<f64, ExternalError>> {
    let line = line.trim_end_matches(['\r', '\n']);
    if let Some(rest) = line.strip_prefix("FITNESS ") {
        return rest.trim().parse::<f64>().ok().map(Ok);
    }
    line.strip_prefix("ERROR ").map(|msg| Err(ExternalError::Remote(msg.to_string())))
}

impl Objective for ExternalObjective {
    fn evaluate(&mut self, x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
        Ok(self.request(x, ctx).map_err(ObjectiveError::from)?)
    }
}

impl Drop for ExternalObjective {
    fn drop(&mut self) {
        self.stdin.take();
        for _ in 0..10 {
            if let Ok(Some(_)) = self.child.try_wait() {
                return;
            }
            thread::sleep(Duration::from_millis(10));
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// A parsed request, as seen by an evaluator.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub run_id: u64,
    pub step: usize,
    pub probe: usize,
    pub x: Vec<f64>,
}

/// Parses an `EVAL` line; the error text is suitable for an `ERROR` reply.
pub fn parse_request(line: &str) -> Result<EvalRequest, String> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("EVAL") {
        return Err(format!("expected EVAL, got {line:?}"));
    }
    let mut field = |name: &str| tokens.next().ok_or_else(|| format!("missing {name}"));
    let run_id = field("run_id")?.parse().map_err(|e| format!("run_id: {e}"))?;
    let step = field("step")?.parse().map_err(|e| format!("step: {e}"))?;
    let probe = field("probe")?.parse().map_err(|e| format!("probe: {e}"))?;
    let n: usize = field("n_dims")?.parse().map_err(|e| format!("n_dims: {e}"))?;
    let x = tokens.map(|t| t.parse::<f64>().map_err(|e| format!("coordinate {t:?}: {e}"))).collect::<Result<Vec<_>, _>>()?;
    if x.len() != n {
        return Err(format!("n_dims is {n} but {} coordinates follow", x.len()));
    }
    Ok(EvalRequest { run_id, step, probe, x })
}

/// Evaluator side of the protocol: handshake, then answer each `EVAL` line
/// until end of input.
pub fn serve<R, W, F>(input: R, mut output: W, mut fitness: F) -> std::io::Result<()>
where
    R: BufRead,
    W: Write,
    F: FnMut(&EvalRequest) -> Result<f64, String>,
{
    writeln!(output, "{HANDSHAKE}")?;
    output.flush()?;
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_request(&line).and_then(|req| fitness(&req)) {
            Ok(v) => writeln!(output, "FITNESS {v:.16e}")?,
            Err(msg) => writeln!(output, "ERROR {}", msg.replace('\n', " "))?,
        }
        output.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replies_parse() {
        assert_eq!(parse_reply("FITNESS 1.5").unwrap().unwrap(), 1.5);
        assert_eq!(parse_reply("FITNESS -2.5e-3\r").unwrap().unwrap(), -2.5e-3);
        assert!(matches!(parse_reply("ERROR bad").unwrap(), Err(ExternalError::Remote(m)) if m == "bad"));
        assert!(parse_reply("FITNES 1.0").is_none());
        assert!(parse_reply("FITNESS one").is_none());
    }

    #[test]
    fn requests_round_trip() {
        let x = [0.1, -1.0 / 3.0, 1e-300];
        let mut line = format!("EVAL 7 3 2 {}", x.len());
        for v in x {
            line.push_str(&format!(" {v:.16e}"));
        }
        let req = parse_request(&line).unwrap();
        assert_eq!(req, EvalRequest { run_id: 7, step: 3, probe: 2, x: x.to_vec() });
        assert!(parse_request("EVAL 0 0 0 2 1.0").is_err());
    }

    #[test]
    fn serve_answers_in_order() {
        let input = b"EVAL 0 0 0 2 1 2\nEVAL 0 0 1 1 x\n".as_slice();
        let mut out = Vec::new();
        serve(input, &mut out, |r| Ok(r.x.iter().sum())).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], HANDSHAKE);
        assert_eq!(lines[1], "FITNESS 3.0000000000000000e0");
        assert!(lines[2].starts_with("ERROR "));
    }
}
