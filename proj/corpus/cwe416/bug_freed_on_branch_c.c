int cwe416_bug_freed_on_branch_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    free(p);
  }
  p[0] = 1;
  return 0;
}
