int cwe416_bug_else_arm_read_m_main(int c) {
  int x = 0;
  char *p = malloc(16);
  free(p);
  if (c) {
    x = 1;
  } else {
    x = *p;
  }
  return x;
}
