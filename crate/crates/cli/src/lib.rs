//! Library side of the `raag-out` command: graph documents and the JSON or
//! text payloads each subcommand prints.

pub mod commands;
pub mod io;
