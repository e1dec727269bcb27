int injection_bug_in_loop_main(int c) {
  char *x = input();
  while (c) {
    exec(x);
    c = c - 1;
  }
  return 0;
}
