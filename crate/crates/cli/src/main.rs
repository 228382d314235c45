fn main() {
    println!("vankampen cli placeholder");
}
