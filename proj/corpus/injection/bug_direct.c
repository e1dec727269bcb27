int injection_bug_direct_main(int c) {
  char *x = input();
  exec(x);
  return 0;
}
