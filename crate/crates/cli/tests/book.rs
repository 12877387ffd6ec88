//! Replays every `$ agc ...` line in the guide's console listings.

use agcodes_cli::{run, EXIT_OK};

const CHAPTER: &str = include_str!("../../../book/src/cli.md");

fn console_blocks(md: &str) -> Vec<Vec<&str>> {
    let mut blocks = vec![];
    let mut current: Option<Vec<&str>> = None;
    for line in md.lines() {
        match (&mut current, line) {
            (None, "```console") => current = Some(vec![]),
            (Some(_), "```") => blocks.push(current.take().unwrap()),
            (Some(block), l) => block.push(l),
            (None, _) => {}
        }
    }
    blocks
}

#[test]
fn console_listings_match_the_binary() {
    let mut replayed = 0;
    for block in console_blocks(CHAPTER) {
        let mut i = 0;
        while i < block.len() {
            let cmd = block[i]
                .strip_prefix("$ ")
                .expect("listing starts with a command");
            let mut expected = String::new();
            i += 1;
            while i < block.len() && !block[i].starts_with("$ ") {
                expected.push_str(block[i]);
                expected.push('\n');
                i += 1;
            }
            let argv = shlex::split(cmd).expect("balanced quotes");
            assert_eq!(argv[0], "agc");
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = run(argv, &mut out, &mut err);
            assert_eq!(code, EXIT_OK, "{cmd}: {}", String::from_utf8_lossy(&err));
            assert_eq!(String::from_utf8(out).unwrap(), expected, "{cmd}");
            replayed += 1;
        }
    }
    assert!(replayed >= 10, "only {replayed} listings found");
}
