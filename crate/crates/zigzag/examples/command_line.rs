//! Drives the command-line interface in-process and prints its JSON.

fn main() {
    for args in [
        vec!["classify", "A:4", "--boundary", "1", "--format", "text"],
        vec!["cheb", "A:4", "--boundary", "1", "--t", "4", "--method", "mono", "--format", "text"],
        vec!["inflow", "D:4", "--boundary", "2", "--format", "text"],
        vec!["cartan", "~A:2", "--graded"],
    ] {
        let out = zigzag::cli::run(std::iter::once("zigzag").chain(args.iter().copied()));
        println!("$ zigzag {}  (exit {})\n{}", args.join(" "), out.code, out.stdout);
    }
}
