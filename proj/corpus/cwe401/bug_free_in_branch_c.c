int cwe401_bug_free_in_branch_c_main(int c) {
  char *p = calloc(4, 4);
  p[0] = 1;
  if (c) {
    free(p);
  }
  return 0;
}
