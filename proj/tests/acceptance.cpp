// placeholder; the acceptance suite is filled in below
int main() { return 1; }
