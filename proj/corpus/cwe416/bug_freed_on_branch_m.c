int cwe416_bug_freed_on_branch_m_main(int c) {
  char *p = malloc(16);
  if (c) {
    free(p);
  }
  p[0] = 1;
  return 0;
}
