int injection_bug_copied_main(int c) {
  char *x = input();
  char *y = x;
  exec(y);
  return 0;
}
