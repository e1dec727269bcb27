int injection_bug_offset_main(int c) {
  char *x = input();
  char *y = x + 1;
  exec(y);
  return 0;
}
