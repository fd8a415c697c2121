pub mod blum;
pub mod cut;
pub mod driver;
pub mod error;
pub mod graph;
pub mod io;
pub mod lab;
pub mod params;
pub mod progress;
pub mod recursion;
pub mod subproblem;
pub mod trace;
