int cwe401_bug_no_free_c_main(int c) {
  char *p = calloc(4, 4);
  p[0] = 1;
  return 0;
}
