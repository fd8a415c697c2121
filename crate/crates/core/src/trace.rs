//! Optional event stream emitted by the structure search, the recursion and
//! cut-or-color. Serialized as JSON lines.

use std::io::Write;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Structure { root: usize, s0: usize, t0: usize, edges: usize },
    Pruned { s1: usize, t1: usize, edges: usize },
    Recurse { depth: usize, s: usize, t: usize, high: usize },
    XExtension { vertex: usize, x: usize, y: usize },
    YExtension { vertex: usize, x: usize, y: usize },
    Outcome { t: usize, outcome: &'static str, x: usize, y: usize },
    Progress { round: usize, kind: &'static str, size: usize },
    Fallback { round: usize, reason: String },
    Backtrack { round: usize, depth: usize },
}

/// Collects events when enabled; a disabled tracer drops them.
#[derive(Debug, Default, Clone)]
pub struct Tracer {
    events: Option<Vec<TraceEvent>>,
}

impl Tracer {
    pub fn enabled() -> Self {
        Tracer { events: Some(Vec::new()) }
    }

    pub fn disabled() -> Self {
        Tracer { events: None }
    }

    pub fn is_enabled(&self) -> bool {
        self.events.is_some()
    }

    #[inline]
    pub fn emit(&mut self, make: impl FnOnce() -> TraceEvent) {
        if let Some(events) = &mut self.events {
            events.push(make());
        }
    }

    pub fn events(&self) -> &[TraceEvent] {
        self.events.as_deref().unwrap_or(&[])
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for e in self.events() {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disabled_tracer_drops_events() {
        let mut t = Tracer::disabled();
        t.emit(|| TraceEvent::Backtrack { round: 0, depth: 1 });
        assert!(t.events().is_empty());
    }

    #[test]
    fn jsonl_lines() {
        let mut t = Tracer::enabled();
        t.emit(|| TraceEvent::XExtension { vertex: 3, x: 2, y: 5 });
        t.emit(|| TraceEvent::Outcome { t: 1, outcome: "sparse_cut", x: 2, y: 5 });
        let mut buf = Vec::new();
        t.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "{\"event\":\"x_extension\",\"vertex\":3,\"x\":2,\"y\":5}\n\
             {\"event\":\"outcome\",\"t\":1,\"outcome\":\"sparse_cut\",\"x\":2,\"y\":5}\n"
        );
    }
}
