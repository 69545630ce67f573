use std::io::{self, Write};

/// Stdout that exits quietly once the reader has gone away.
struct Stdout<W>(W);

impl<W: Write> Write for Stdout<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.write(buf).map_err(quiet_exit)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.0.flush().map_err(quiet_exit)
    }
}

fn quiet_exit(e: io::Error) -> io::Error {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    e
}

fn main() {
    let stderr = io::stderr();
    let mut out = Stdout(io::stdout().lock());
    let code = agdec_cli::commands::run(std::env::args_os(), &mut out, &mut stderr.lock());
    let _ = out.flush();
    std::process::exit(code);
}
